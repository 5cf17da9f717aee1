#include "biasprobe/recover.hpp"

#include <algorithm>
#include <charconv>

#include "biasprobe/aspect.hpp"
#include "biasprobe/error.hpp"

namespace biasprobe {

namespace {

RecoverabilityVerdict make_verdict(Ruling ruling, Rational fraction, std::string rule_id, std::string rationale) {
  if (fraction < Rational(0) || fraction > Rational(1)) {
    throw Error(ErrorKind::out_of_range, "affected fraction " + fraction.str() + " outside [0, 1]");
  }
  if (fraction.is_zero()) ruling = Ruling::recoverable;
  if (ruling == Ruling::recoverable && !fraction.is_zero()) {
    throw Error(ErrorKind::validation, "recoverable verdict with non-zero fraction");
  }
  return {ruling, std::move(fraction), std::move(rule_id), std::move(rationale), {}};
}

std::uint64_t parse_count(std::string_view text, const char* what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::unknown_value, std::string(what) + " '" + std::string(text) + "' is not a number");
  }
  return v;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

}  // namespace

const char* to_string(Ruling ruling) noexcept {
  switch (ruling) {
    case Ruling::recoverable: return "Recoverable";
    case Ruling::unrecoverable: return "Unrecoverable";
    case Ruling::partial: return "Partial";
  }
  return "?";
}

Ruling parse_ruling(std::string_view text) {
  for (Ruling r : {Ruling::recoverable, Ruling::unrecoverable, Ruling::partial}) {
    if (text == to_string(r)) return r;
  }
  throw Error(ErrorKind::parse, "unknown ruling '" + std::string(text) + "'");
}

RecoverabilityVerdict color_verdict(std::string_view withheld, const BrickCatalog& catalog, const RuleSet& rules) {
  const auto& staples = catalog.staple_colors;
  if (std::find(staples.begin(), staples.end(), withheld) == staples.end()) {
    throw Error(ErrorKind::unknown_value, "unknown color '" + std::string(withheld) + "'");
  }
  ColorSet others;
  std::vector<std::string> other_list;
  for (const auto& c : staples) {
    if (c == withheld) continue;
    others.insert(c);
    other_list.push_back(c);
  }
  const std::string target(withheld);
  if (reachable(target, others, rules, ModelSet::both())) {
    return make_verdict(Ruling::recoverable, 0, "color-mixing-closure",
                        target + " is composable from {" + join(other_list) +
                            "} under additive and subtractive mixing; no added error");
  }
  return make_verdict(Ruling::unrecoverable, Rational::from_integers(1, staples.size()), "color-mixing-closure",
                      target + " is not reachable from {" + join(other_list) +
                          "} under additive or subtractive mixing; every " + target +
                          " brick is misbinned (1 of " + std::to_string(staples.size()) + " staple colors)");
}

RecoverabilityVerdict size_verdict(std::uint64_t withheld_stud_count, const BrickCatalog& catalog) {
  const auto& range = catalog.stud_count_range;
  if (!range.contains(withheld_stud_count)) {
    throw Error(ErrorKind::out_of_range, "stud count " + std::to_string(withheld_stud_count) + " outside " +
                                             std::to_string(range.min) + ".." + std::to_string(range.max));
  }
  const auto unique_types = production_unique_types(catalog);
  // Nearest whole number of types per stud count (1133/54 -> 21).
  const auto per_count = (2 * unique_types + range.width()) / (2 * range.width());
  auto v = make_verdict(Ruling::partial, Rational::from_integers(per_count, catalog.unique_type_count_for_error),
                        "stud-count-uniform-worst-case",
                        "assuming equal numbers per stud count (" + std::to_string(unique_types) + "/" +
                            std::to_string(range.width()) + " = " + std::to_string(per_count) +
                            " types each), all " + std::to_string(per_count) + " types with " +
                            std::to_string(withheld_stud_count) + " studs are misbinned out of " +
                            std::to_string(catalog.unique_type_count_for_error));
  v.notes.push_back({"types_per_stud_count", Rational(static_cast<std::int64_t>(per_count))});
  return v;
}

RecoverabilityVerdict orientation_verdict(std::uint64_t withheld_bin, const BrickCatalog& catalog) {
  if (withheld_bin >= catalog.orientation_bins) {
    throw Error(ErrorKind::out_of_range, "orientation bin " + std::to_string(withheld_bin) + " outside 0.." +
                                             std::to_string(catalog.orientation_bins - 1));
  }
  return make_verdict(Ruling::recoverable, 0, "in-plane-augmentation-closure",
                      "in-plane rotation augmentation of the remaining bins covers bin " +
                          std::to_string(withheld_bin) + "; no added error");
}

RecoverabilityVerdict pose_verdict(std::string_view withheld_pose, const BrickCatalog& catalog) {
  const auto poses = pose_labels(catalog);
  if (std::find(poses.begin(), poses.end(), withheld_pose) == poses.end()) {
    throw Error(ErrorKind::unknown_value, "unknown pose '" + std::string(withheld_pose) + "'");
  }
  const auto exact = Rational::from_integers(kPoseUniquePieces, catalog.unique_type_count_for_error);
  // Whole percent, rounded half up from the exact share.
  const auto percent = std::stoll(render_decimal(exact * Rational(100), 0));
  const auto cube = affected_by_missing_face(Face::top);

  auto v = make_verdict(Ruling::partial, Rational::from_integers(percent, 100), "stable-pose-unique-pieces",
                        std::to_string(kPoseUniquePieces) + " of " +
                            std::to_string(catalog.unique_type_count_for_error) +
                            " unique types have no similar piece to generalize from when pose " +
                            std::string(withheld_pose) + " is unseen; " + std::to_string(percent) +
                            "% (exact " + exact.str() + " = " + render_decimal(exact, 6) +
                            "); a missing cube face affects " + std::to_string(cube.affected_aspects) + " of " +
                            std::to_string(cube.total_aspects) + " aspects");
  v.notes.push_back({"exact_alternative", exact});
  v.notes.push_back({"cube_aspects_affected", cube.affected_fraction});
  return v;
}

RecoverabilityVerdict shape_verdict(std::string_view withheld_group, const BrickCatalog& catalog) {
  const auto* group = find_category(catalog, withheld_group);
  if (group == nullptr) {
    throw Error(ErrorKind::unknown_value, "unknown shape group '" + std::string(withheld_group) + "'");
  }
  const auto& smallest = smallest_category(catalog);
  const auto images =
      checked_product({smallest.subtype_count, catalog.staple_colors.size(), catalog.orientation_bins});
  const auto population = binning_population(catalog, PopulationMode::production);
  const auto remaining = subtype_total(catalog) - group->subtype_count;

  auto v = make_verdict(Ruling::partial, Rational::from_integers(images, population), "smallest-group-optimistic-bound",
                        "withholding '" + group->name + "' leaves " + std::to_string(remaining) +
                            " types correctly classified; error bounded by the smallest group '" + smallest.name +
                            "': " + std::to_string(smallest.subtype_count) + " x " +
                            std::to_string(catalog.staple_colors.size()) + " x " +
                            std::to_string(catalog.orientation_bins) + " = " + std::to_string(images) + " of " +
                            std::to_string(population) + " images");
  v.notes.push_back({"remaining_correct_types", Rational(static_cast<std::int64_t>(remaining))});
  v.notes.push_back({"misclassified_images", Rational(static_cast<std::int64_t>(images))});
  return v;
}

std::string network_label_for(std::string_view dimension) {
  if (dimension == dim::color) return "A^c";
  if (dimension == dim::size) return "A^z";
  if (dimension == dim::orientation) return "A^o";
  if (dimension == dim::pose) return "A^p";
  if (dimension == dim::shape) return "A^s";
  throw Error(ErrorKind::unsupported_dimension, "unsupported dimension '" + std::string(dimension) + "'");
}

bool is_supported_dimension(std::string_view dimension) {
  return dimension == dim::color || dimension == dim::size || dimension == dim::orientation ||
         dimension == dim::pose || dimension == dim::shape;
}

AnalysisResult analyze(const BiasSpec& bias, const BrickCatalog& catalog, const RuleSet& rules) {
  if (bias.entries.size() != 1) {
    throw Error(ErrorKind::unsupported_bias,
                "closed-form analysis takes exactly one biased dimension; use the oracle for combined biases");
  }
  const auto& entry = bias.entries.front();
  if (!is_supported_dimension(entry.dimension)) {
    throw Error(ErrorKind::unsupported_dimension,
                "unsupported dimension '" + entry.dimension + "'; expected color, size, orientation, pose or shape");
  }
  if (entry.withheld.size() != 1) {
    throw Error(ErrorKind::unsupported_bias, "closed-form analysis withholds exactly one value of '" +
                                                 entry.dimension + "'");
  }
  const std::string_view value = entry.withheld.front();

  AnalysisResult result;
  result.bias = bias;
  result.network_label = network_label_for(entry.dimension);
  if (entry.dimension == dim::color) {
    result.verdict = color_verdict(value, catalog, rules);
  } else if (entry.dimension == dim::size) {
    result.verdict = size_verdict(parse_count(value, "stud count"), catalog);
  } else if (entry.dimension == dim::orientation) {
    result.verdict = orientation_verdict(parse_count(value, "orientation bin"), catalog);
  } else if (entry.dimension == dim::pose) {
    result.verdict = pose_verdict(value, catalog);
  } else {
    result.verdict = shape_verdict(value, catalog);
  }
  result.added_error = result.verdict.affected_fraction;
  return result;
}

Json verdict_to_json(const RecoverabilityVerdict& v) {
  Json j;
  j["ruling"] = to_string(v.ruling);
  j["affected_fraction"] = rendered_rational_to_json(v.affected_fraction);
  j["rule_id"] = v.rule_id;
  j["rationale"] = v.rationale;
  j["notes"] = Json::array();
  for (const auto& n : v.notes) j["notes"].push_back({{"label", n.label}, {"value", rendered_rational_to_json(n.value)}});
  return j;
}

RecoverabilityVerdict verdict_from_json(const Json& j) {
  try {
    RecoverabilityVerdict v;
    v.ruling = parse_ruling(j.at("ruling").get<std::string>());
    v.affected_fraction = rational_from_json(j.at("affected_fraction"));
    v.rule_id = j.at("rule_id").get<std::string>();
    v.rationale = j.at("rationale").get<std::string>();
    for (const auto& n : j.value("notes", Json::array())) {
      v.notes.push_back({n.at("label").get<std::string>(), rational_from_json(n.at("value"))});
    }
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("verdict: ") + e.what());
  }
}

Json analysis_to_json(const AnalysisResult& r) {
  Json j;
  j["bias"] = bias_to_json(r.bias);
  j["network_label"] = r.network_label;
  j["verdict"] = verdict_to_json(r.verdict);
  j["added_error"] = rendered_rational_to_json(r.added_error);
  return j;
}

AnalysisResult analysis_from_json(const Json& j) {
  try {
    AnalysisResult r;
    r.bias = bias_from_json(j.at("bias"));
    if (r.bias.entries.size() != 1 || r.bias.entries.front().withheld.size() != 1) {
      throw Error(ErrorKind::parse, "analysis result must carry a single-value bias");
    }
    r.network_label = j.at("network_label").get<std::string>();
    r.verdict = verdict_from_json(j.at("verdict"));
    r.added_error = rational_from_json(j.at("added_error"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("analysis result: ") + e.what());
  }
}

}  // namespace biasprobe
