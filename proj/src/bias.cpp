#include "biasprobe/bias.hpp"

#include <set>

#include "biasprobe/error.hpp"

namespace biasprobe {

BiasSpec validate_bias(const DomainSpec& domain, const BiasSpec& bias) {
  if (bias.entries.empty()) throw Error(ErrorKind::validation, "bias has no entries");
  std::set<std::string_view> seen_dims;
  for (const auto& entry : bias.entries) {
    const auto pos = domain.find(entry.dimension);
    if (pos == npos) {
      throw Error(ErrorKind::unknown_dimension, "bias entry '" + entry.dimension + "': unknown dimension");
    }
    if (!seen_dims.insert(entry.dimension).second) {
      throw Error(ErrorKind::validation, "bias entry '" + entry.dimension + "' appears twice");
    }
    if (entry.withheld.empty()) {
      throw Error(ErrorKind::validation, "bias entry '" + entry.dimension + "' withholds nothing");
    }
    const auto& dimension = domain.dimensions()[pos];
    std::set<std::string_view> values;
    for (const auto& v : entry.withheld) {
      if (dimension.index_of(v) == npos) {
        throw Error(ErrorKind::unknown_value,
                    "bias entry '" + entry.dimension + "': unknown value '" + v + "'");
      }
      values.insert(v);
    }
    if (values.size() >= dimension.cardinality()) {
      throw Error(ErrorKind::all_values_withheld,
                  "bias entry '" + entry.dimension + "' withholds every value");
    }
  }
  return bias;
}

BiasApplication apply_bias(const DomainSpec& domain, const BiasSpec& bias) {
  validate_bias(domain, bias);
  const auto population = population_size(domain);
  std::uint64_t training = 1;
  for (std::size_t d = 0; d < domain.rank(); ++d) {
    const auto& dimension = domain.dimensions()[d];
    std::uint64_t kept = dimension.cardinality();
    for (const auto& entry : bias.entries) {
      if (entry.dimension != dimension.name) continue;
      const std::set<std::string_view> withheld(entry.withheld.begin(), entry.withheld.end());
      kept -= withheld.size();
    }
    training = checked_product({training, kept});
  }
  BiasApplication out;
  out.training_size = training;
  out.withheld_size = population - training;
  out.withheld_fraction = Rational::from_integers(out.withheld_size, population);
  return out;
}

Json bias_to_json(const BiasSpec& bias) {
  Json j = Json::array();
  for (const auto& entry : bias.entries) {
    j.push_back({{"dimension", entry.dimension}, {"withheld", entry.withheld}});
  }
  return j;
}

BiasSpec bias_from_json(const Json& doc) {
  BiasSpec bias;
  try {
    if (!doc.is_array()) throw Error(ErrorKind::parse, "bias spec must be an array");
    for (const auto& item : doc) {
      BiasEntry entry;
      entry.dimension = item.at("dimension").get<std::string>();
      for (const auto& v : item.at("withheld")) {
        // Numeric labels (orientation bins, stud counts) may be written bare.
        entry.withheld.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      }
      bias.entries.push_back(std::move(entry));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("bias spec: ") + e.what());
  }
  return bias;
}

BiasSpec parse_bias_spec(std::string_view text) { return bias_from_json(parse_json(text, "bias spec")); }

}  // namespace biasprobe
