#include "biasprobe/mixing.hpp"

#include <algorithm>

#include "biasprobe/error.hpp"

namespace biasprobe {

const char* to_string(MixingModel model) noexcept {
  return model == MixingModel::additive ? "additive" : "subtractive";
}

MixingModel parse_model(std::string_view text) {
  if (text == "additive") return MixingModel::additive;
  if (text == "subtractive") return MixingModel::subtractive;
  throw Error(ErrorKind::parse, "unknown mixing model '" + std::string(text) + "'");
}

RuleSet builtin_rules() {
  using M = MixingModel;
  return RuleSet{{
      {"green", {"blue", "yellow"}, M::additive},
      {"black", {"red", "yellow", "blue"}, M::additive},
      {"black", {"blue", "orange"}, M::additive},
      {"black", {"red", "green"}, M::additive},
      {"black", {"yellow", "purple"}, M::additive},
      {"white", {"red", "green", "blue"}, M::additive},
      {"white", {"yellow", "blue"}, M::additive},

      {"cyan", {"green", "light-blue"}, M::subtractive},
      {"magenta", {"red", "blue"}, M::subtractive},
      {"red", {"magenta", "yellow"}, M::subtractive},
      {"green", {"cyan", "yellow"}, M::subtractive},
      {"blue", {"cyan", "magenta"}, M::subtractive},
      {"black", {"cyan", "magenta", "yellow"}, M::subtractive},
  }};
}

void validate_rules(const RuleSet& rules) {
  for (const auto& rule : rules.rules) {
    if (rule.output.empty()) throw Error(ErrorKind::validation, "mixing rule with empty output");
    if (rule.inputs.size() < 2) {
      throw Error(ErrorKind::validation, "mixing rule for '" + rule.output + "' needs at least two inputs");
    }
    if (std::find(rule.inputs.begin(), rule.inputs.end(), rule.output) != rule.inputs.end()) {
      throw Error(ErrorKind::validation, "mixing rule for '" + rule.output + "' lists its output as an input");
    }
  }
}

RuleSet parse_rules(std::string_view text) {
  const Json doc = parse_json(text, "rules");
  RuleSet rules;
  try {
    if (!doc.is_array()) throw Error(ErrorKind::parse, "rules: document must be an array");
    for (const auto& item : doc) {
      rules.rules.push_back({item.at("output").get<std::string>(),
                             item.at("inputs").get<std::vector<std::string>>(),
                             parse_model(item.at("model").get<std::string>())});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("rules: ") + e.what());
  }
  validate_rules(rules);
  return rules;
}

RuleSet load_rules_file(const std::string& path) { return parse_rules(read_text_file(path)); }

Json rules_to_json(const RuleSet& rules) {
  Json j = Json::array();
  for (const auto& rule : rules.rules) {
    j.push_back({{"output", rule.output}, {"inputs", rule.inputs}, {"model", to_string(rule.model)}});
  }
  return j;
}

ColorSet closure(const ColorSet& available, const RuleSet& rules, ModelSet models) {
  if (models.empty()) throw Error(ErrorKind::invalid_argument, "closure needs at least one mixing model");
  ColorSet result = available;
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& rule : rules.rules) {
      if (!models.contains(rule.model) || result.contains(rule.output)) continue;
      const bool fires = std::all_of(rule.inputs.begin(), rule.inputs.end(),
                                     [&](const Color& c) { return result.contains(c); });
      if (fires) {
        result.insert(rule.output);
        grew = true;
      }
    }
  }
  return result;
}

bool reachable(std::string_view target, const ColorSet& available, const RuleSet& rules, ModelSet models) {
  return closure(available, rules, models).contains(std::string(target));
}

}  // namespace biasprobe
