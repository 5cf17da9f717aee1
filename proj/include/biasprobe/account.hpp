#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "biasprobe/catalog.hpp"
#include "biasprobe/mixing.hpp"
#include "biasprobe/rational.hpp"

namespace biasprobe {

/// Generalization-error bound of one network: the unbiased base error plus
/// whatever the training bias adds.
struct ErrorBound {
  Rational base;
  Rational added;
  Rational total;
  std::string label;
};

/// Throws Error(out_of_range) unless base, added and their sum lie in [0, 1].
ErrorBound total_error(const Rational& base, const Rational& added, std::string label);

inline constexpr unsigned kRenderPlaces = 6;

struct Table2Row {
  std::string bias_name;
  std::string network_label;
  ErrorBound bound;
  std::string rendered;  // render_decimal(bound.total, kRenderPlaces)
};

/// One row per analysed bias: unbiased, colour split by verdict (the
/// unrecoverable group first), size, orientation, pose, shape.
std::vector<Table2Row> table2(const BrickCatalog& catalog, const RuleSet& rules);

struct CombinationMagnitude {
  double log10_value = 0.0;
  std::uint64_t digit_count = 0;
};

/// Magnitude of C(n, k) for exact integers. Small cases sum logarithms
/// directly and count digits on the exact big-integer value; large ones use a
/// cancellation-free Stirling difference. Throws Error(invalid_argument) when
/// k > n.
CombinationMagnitude log10_combinations(std::uint64_t n, std::uint64_t k);

/// Same for a real-valued population size (e.g. 1.5e25) that does not fit an
/// integer. Integral n below 2^63 is routed to the exact overload.
CombinationMagnitude log10_combinations(long double n, std::uint64_t k);

}  // namespace biasprobe
