#include "biasprobe/report.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <ctime>
#include <map>
#include <sstream>

#include "biasprobe/account.hpp"
#include "biasprobe/error.hpp"

namespace biasprobe {

namespace {

struct DimensionInfo {
  std::string_view name;
  std::string_view display;
};

// Column order of the evaluated-dimensions list.
constexpr std::array<DimensionInfo, 5> kDimensions = {{
    {dim::size, "size"},
    {dim::shape, "shape"},
    {dim::orientation, "orientation"},
    {dim::color, "color"},
    {dim::pose, "3D pose"},
}};

constexpr std::string_view kMissingData = "missing data";
constexpr std::string_view kInterpretation =
    "at least one value of an evaluated dimension has zero training images";
constexpr std::string_view kNotApplicable = "imaging geometry, lighting, occlusion";
constexpr std::string_view kNonEvaluatedImpact =
    "no closed form; joint withholding probably exceeds the largest single bound, "
    "sparse (non-zero) coverage probably stays below it";

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

std::vector<std::string> impact_strings(const std::vector<ImpactEntry>& impact, std::string_view sep) {
  std::vector<std::string> out;
  for (const auto& e : impact) out.push_back(e.label + std::string(sep) + e.rendered);
  return out;
}

std::string markdown_cell(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> row_cells(const BreakdownRow& row, std::string_view list_sep, std::string_view impact_sep) {
  return {row.bias_class,
          join(row.dimensions_evaluated, list_sep),
          row.interpretation,
          row.not_applicable_by_design,
          join(impact_strings(row.evaluated_impact, impact_sep), list_sep == ", " ? "; " : list_sep),
          join(row.dimensions_not_evaluated, list_sep),
          row.estimated_impact_of_non_evaluated};
}

std::vector<std::string> string_list(const Json& j, const char* key) {
  return j.at(key).get<std::vector<std::string>>();
}

}  // namespace

const std::vector<std::string>& breakdown_columns() {
  static const std::vector<std::string> columns = {
      "Bias class",
      "Bias dimensions evaluated",
      "Interpretation within current domain",
      "Bias not applicable by design",
      "Evaluated impact on performance requirements",
      "Bias dimensions not evaluated",
      "Estimated impact of non-evaluated biases",
  };
  return columns;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

BiasBreakdown build_breakdown(const std::vector<AnalysisResult>& results, const BrickCatalog& catalog,
                              std::optional<std::string> generated_at) {
  BiasBreakdown breakdown;
  breakdown.catalog_id = catalog.name;
  breakdown.generated_at = std::move(generated_at);
  if (results.empty()) return breakdown;

  BreakdownRow row;
  row.bias_class = kMissingData;
  row.interpretation = kInterpretation;
  row.not_applicable_by_design = kNotApplicable;
  row.estimated_impact_of_non_evaluated = kNonEvaluatedImpact;

  const auto base = total_error(catalog.manufacturing_error, 0, "A");
  row.evaluated_impact.push_back({"A", render_decimal(base.total, kRenderPlaces), base.total});

  std::vector<std::string> evaluated, not_evaluated;
  for (const auto& info : kDimensions) {
    // Results of this dimension grouped by total bound, in order of appearance.
    std::vector<std::pair<Rational, std::vector<std::string>>> groups;
    for (const auto& r : results) {
      if (r.dimension() != info.name) continue;
      const auto total = total_error(catalog.manufacturing_error, r.added_error, r.network_label).total;
      auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == total; });
      if (it == groups.end()) {
        groups.push_back({total, {}});
        it = std::prev(groups.end());
      }
      if (std::find(it->second.begin(), it->second.end(), r.withheld()) == it->second.end()) {
        it->second.push_back(r.withheld());
      }
    }
    if (groups.empty()) {
      not_evaluated.emplace_back(info.display);
      continue;
    }
    evaluated.emplace_back(info.display);
    const auto label = network_label_for(info.name);
    for (const auto& [total, values] : groups) {
      std::string entry_label = label;
      if (groups.size() > 1) {
        entry_label += ", " + label.substr(label.find('^') + 1) + " ∈ (" + join(values, ", ") + ")";
      }
      row.evaluated_impact.push_back({entry_label, render_decimal(total, kRenderPlaces), total});
    }
  }
  row.dimensions_evaluated = evaluated;
  row.dimensions_not_evaluated.push_back("conjunctions of " + join(evaluated, ", "));
  row.dimensions_not_evaluated.push_back("low sample size of some dimension");
  for (auto& d : not_evaluated) row.dimensions_not_evaluated.push_back(std::move(d));

  breakdown.rows.push_back(std::move(row));
  return breakdown;
}

std::vector<AnalysisResult> builtin_analyses(const BrickCatalog& catalog, const RuleSet& rules) {
  std::vector<AnalysisResult> out;
  for (const auto& c : catalog.staple_colors) out.push_back(analyze(BiasSpec::single("color", {c}), catalog, rules));
  out.push_back(analyze(BiasSpec::single("size", {std::to_string(catalog.stud_count_range.min)}), catalog, rules));
  out.push_back(analyze(BiasSpec::single("orientation", {"0"}), catalog, rules));
  out.push_back(analyze(BiasSpec::single("pose", {pose_labels(catalog).front()}), catalog, rules));
  out.push_back(analyze(BiasSpec::single("shape", {catalog.categories.front().name}), catalog, rules));
  return out;
}

void merge_notes(BiasBreakdown& breakdown, const Json& notes) {
  if (!notes.is_object()) throw Error(ErrorKind::parse, "notes: document must be an object keyed by bias class");
  try {
    for (const auto& [bias_class, fields] : notes.items()) {
      auto it = std::find_if(breakdown.rows.begin(), breakdown.rows.end(),
                             [&](const BreakdownRow& r) { return r.bias_class == bias_class; });
      if (it == breakdown.rows.end()) {
        breakdown.rows.push_back(BreakdownRow{bias_class, {}, {}, {}, {}, {}, {}});
        it = std::prev(breakdown.rows.end());
      }
      if (fields.contains("dimensions_not_evaluated")) {
        for (auto& d : string_list(fields, "dimensions_not_evaluated")) it->dimensions_not_evaluated.push_back(d);
      }
      if (fields.contains("estimated_impact_of_non_evaluated")) {
        it->estimated_impact_of_non_evaluated = fields.at("estimated_impact_of_non_evaluated").get<std::string>();
      }
      if (fields.contains("interpretation")) it->interpretation = fields.at("interpretation").get<std::string>();
      if (fields.contains("not_applicable_by_design")) {
        it->not_applicable_by_design = fields.at("not_applicable_by_design").get<std::string>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("notes: ") + e.what());
  }
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "markdown" || text == "md") return ReportFormat::markdown;
  if (text == "csv") return ReportFormat::csv;
  if (text == "json") return ReportFormat::json;
  throw Error(ErrorKind::parse, "unknown report format '" + std::string(text) + "'");
}

std::string render(const BiasBreakdown& breakdown, ReportFormat format) {
  std::ostringstream out;
  const auto& columns = breakdown_columns();
  switch (format) {
    case ReportFormat::markdown: {
      out << "# Bias Breakdown\n\n";
      out << "Catalog: " << breakdown.catalog_id << "\n";
      if (breakdown.generated_at) out << "Generated: " << *breakdown.generated_at << "\n";
      out << "\n|";
      for (const auto& c : columns) out << ' ' << c << " |";
      out << "\n|";
      for (std::size_t i = 0; i < columns.size(); ++i) out << "---|";
      out << '\n';
      for (const auto& row : breakdown.rows) {
        out << '|';
        for (const auto& cell : row_cells(row, ", ", ": ")) out << ' ' << markdown_cell(cell) << " |";
        out << '\n';
      }
      break;
    }
    case ReportFormat::csv: {
      std::vector<std::string> header;
      for (const auto& c : columns) header.push_back(csv_field(c));
      out << join(header, ",") << '\n';
      for (const auto& row : breakdown.rows) {
        std::vector<std::string> cells;
        for (const auto& cell : row_cells(row, ";", "=")) cells.push_back(csv_field(cell));
        out << join(cells, ",") << '\n';
      }
      break;
    }
    case ReportFormat::json:
      out << breakdown_to_json(breakdown).dump(2) << '\n';
      break;
  }
  return out.str();
}

Json breakdown_to_json(const BiasBreakdown& b) {
  Json j;
  j["catalog_id"] = b.catalog_id;
  j["generated_at"] = b.generated_at ? Json(*b.generated_at) : Json(nullptr);
  j["rows"] = Json::array();
  for (const auto& row : b.rows) {
    Json r;
    r["bias_class"] = row.bias_class;
    r["dimensions_evaluated"] = row.dimensions_evaluated;
    r["interpretation"] = row.interpretation;
    r["not_applicable_by_design"] = row.not_applicable_by_design;
    r["evaluated_impact"] = Json::array();
    for (const auto& e : row.evaluated_impact) {
      r["evaluated_impact"].push_back({{"label", e.label}, {"rendered", e.rendered}, {"exact", rational_to_json(e.exact)}});
    }
    r["dimensions_not_evaluated"] = row.dimensions_not_evaluated;
    r["estimated_impact_of_non_evaluated"] = row.estimated_impact_of_non_evaluated;
    j["rows"].push_back(std::move(r));
  }
  return j;
}

BiasBreakdown breakdown_from_json(const Json& j) {
  try {
    BiasBreakdown b;
    b.catalog_id = j.at("catalog_id").get<std::string>();
    if (!j.at("generated_at").is_null()) b.generated_at = j.at("generated_at").get<std::string>();
    for (const auto& r : j.at("rows")) {
      BreakdownRow row;
      row.bias_class = r.at("bias_class").get<std::string>();
      row.dimensions_evaluated = string_list(r, "dimensions_evaluated");
      row.interpretation = r.at("interpretation").get<std::string>();
      row.not_applicable_by_design = r.at("not_applicable_by_design").get<std::string>();
      for (const auto& e : r.at("evaluated_impact")) {
        row.evaluated_impact.push_back(
            {e.at("label").get<std::string>(), e.at("rendered").get<std::string>(), rational_from_json(e.at("exact"))});
      }
      row.dimensions_not_evaluated = string_list(r, "dimensions_not_evaluated");
      row.estimated_impact_of_non_evaluated = r.at("estimated_impact_of_non_evaluated").get<std::string>();
      b.rows.push_back(std::move(row));
    }
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("breakdown: ") + e.what());
  }
}

BiasBreakdown parse_breakdown(std::string_view json_text) {
  return breakdown_from_json(parse_json(json_text, "breakdown"));
}

}  // namespace biasprobe
