#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "biasprobe/json_io.hpp"

namespace biasprobe {

using Color = std::string;
using ColorSet = std::set<Color>;

enum class MixingModel : std::uint8_t { additive = 1, subtractive = 2 };

/// Bitmask over MixingModel.
class ModelSet {
 public:
  constexpr ModelSet() = default;
  constexpr ModelSet(MixingModel m) : bits_(static_cast<std::uint8_t>(m)) {}  // NOLINT(implicit)

  static constexpr ModelSet both() { return ModelSet(MixingModel::additive) | MixingModel::subtractive; }

  constexpr bool contains(MixingModel m) const { return (bits_ & static_cast<std::uint8_t>(m)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }

  friend constexpr ModelSet operator|(ModelSet a, ModelSet b) {
    ModelSet r;
    r.bits_ = static_cast<std::uint8_t>(a.bits_ | b.bits_);
    return r;
  }
  friend constexpr bool operator==(ModelSet, ModelSet) = default;

 private:
  std::uint8_t bits_ = 0;
};

const char* to_string(MixingModel model) noexcept;
/// "additive" or "subtractive"; throws Error(parse) otherwise.
MixingModel parse_model(std::string_view text);

/// `output` can be composed from all of `inputs` under `model`.
struct MixingRule {
  Color output;
  std::vector<Color> inputs;
  MixingModel model = MixingModel::additive;

  friend bool operator==(const MixingRule&, const MixingRule&) = default;
};

struct RuleSet {
  std::vector<MixingRule> rules;
};

/// Additive (RGB-style) and subtractive (CMY-style) composition rules for the
/// staple colours and the intermediates they mix through.
RuleSet builtin_rules();

/// Throws Error(validation) if a rule has fewer than two inputs or lists its
/// own output among them.
void validate_rules(const RuleSet& rules);

/// Array of {"output", "inputs", "model"}; validated.
RuleSet parse_rules(std::string_view text);
RuleSet load_rules_file(const std::string& path);
Json rules_to_json(const RuleSet& rules);

/// Least fixpoint: the smallest superset of `available` closed under every
/// rule of the selected models. Each pass either adds a colour or stops, so
/// the loop runs at most |colour universe| + 1 times.
ColorSet closure(const ColorSet& available, const RuleSet& rules, ModelSet models);

bool reachable(std::string_view target, const ColorSet& available, const RuleSet& rules, ModelSet models);

}  // namespace biasprobe
