#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "biasprobe/domain.hpp"
#include "biasprobe/json_io.hpp"
#include "biasprobe/rational.hpp"

namespace biasprobe {

/// Values of one dimension that never appear in the training set.
struct BiasEntry {
  std::string dimension;
  std::vector<std::string> withheld;

  friend bool operator==(const BiasEntry&, const BiasEntry&) = default;
};

struct BiasSpec {
  std::vector<BiasEntry> entries;

  static BiasSpec single(std::string dimension, std::vector<std::string> withheld) {
    return BiasSpec{{BiasEntry{std::move(dimension), std::move(withheld)}}};
  }

  friend bool operator==(const BiasSpec&, const BiasSpec&) = default;
};

struct BiasApplication {
  std::uint64_t training_size = 0;
  std::uint64_t withheld_size = 0;
  Rational withheld_fraction;
};

/// Returns `bias` unchanged when every entry names a dimension of `domain`,
/// every withheld value belongs to it, and at least one value of each biased
/// dimension survives. Otherwise throws Error with kind unknown_dimension,
/// unknown_value, all_values_withheld or validation (empty or duplicated
/// entries); the message names the offending entry.
BiasSpec validate_bias(const DomainSpec& domain, const BiasSpec& bias);

/// Counts the instances carrying a withheld value in at least one biased
/// dimension. The training set of a product domain is itself a product of
/// the surviving values per dimension, so the withheld count is the
/// complement of that product (inclusion-exclusion in closed form).
BiasApplication apply_bias(const DomainSpec& domain, const BiasSpec& bias);

Json bias_to_json(const BiasSpec& bias);
/// Array of {"dimension", "withheld": [...]}. Throws Error(parse).
BiasSpec parse_bias_spec(std::string_view text);
BiasSpec bias_from_json(const Json& doc);

}  // namespace biasprobe
