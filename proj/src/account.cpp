#include "biasprobe/account.hpp"

#include <cmath>
#include <numbers>

#include "biasprobe/error.hpp"
#include "biasprobe/recover.hpp"

namespace biasprobe {

namespace {

constexpr std::uint64_t kSumOfLogsLimit = 1'000'000;
constexpr std::uint64_t kExactDigitsLimit = 5'000;

std::string color_group_label(const std::vector<std::string>& colors) {
  std::string out = "A^c, c ∈ (";
  for (std::size_t i = 0; i < colors.size(); ++i) {
    if (i > 0) out += ", ";
    out += colors[i];
  }
  return out + ")";
}

// ln Gamma(b + 1) - ln Gamma(a + 1) for b = a + j, a >= 10, via Stirling with
// the large terms rearranged so nothing of size b*ln(b) is subtracted.
long double lgamma_ratio(long double a, long double j) {
  const long double x = a + 1.0L;  // Gamma(a + 1) = Gamma(x)
  const long double y = x + j;
  long double d = (x - 0.5L) * std::log1p(j / x) + j * std::log(y) - j;
  d += (1.0L / (12.0L * y) - 1.0L / (12.0L * x));
  d -= (1.0L / (360.0L * y * y * y) - 1.0L / (360.0L * x * x * x));
  return d;
}

CombinationMagnitude from_log10(long double log10_value) {
  return {static_cast<double>(log10_value), static_cast<std::uint64_t>(std::floor(log10_value)) + 1};
}

CombinationMagnitude stirling_path(long double n, long double j) {
  const long double ln = lgamma_ratio(n - j, j) - std::lgamma(j + 1.0L);
  return from_log10(ln / std::numbers::ln10_v<long double>);
}

}  // namespace

ErrorBound total_error(const Rational& base, const Rational& added, std::string label) {
  const Rational zero(0), one(1);
  if (base < zero || base > one) throw Error(ErrorKind::out_of_range, "base error " + base.str() + " outside [0, 1]");
  if (added < zero || added > one) {
    throw Error(ErrorKind::out_of_range, "added error " + added.str() + " outside [0, 1]");
  }
  Rational total = base + added;
  if (total > one) throw Error(ErrorKind::out_of_range, "total error " + total.str() + " exceeds 1");
  return {base, added, std::move(total), std::move(label)};
}

std::vector<Table2Row> table2(const BrickCatalog& catalog, const RuleSet& rules) {
  const auto& base = catalog.manufacturing_error;
  std::vector<Table2Row> rows;
  auto push = [&](std::string bias_name, std::string label, const Rational& added) {
    auto bound = total_error(base, added, label);
    auto rendered = render_decimal(bound.total, kRenderPlaces);
    rows.push_back({std::move(bias_name), std::move(label), std::move(bound), std::move(rendered)});
  };

  push("Unbiased", "A", 0);

  std::vector<std::string> unrecoverable, recoverable;
  Rational color_added;
  for (const auto& c : catalog.staple_colors) {
    const auto v = color_verdict(c, catalog, rules);
    if (v.ruling == Ruling::recoverable) {
      recoverable.push_back(c);
    } else {
      unrecoverable.push_back(c);
      color_added = v.affected_fraction;
    }
  }
  if (!unrecoverable.empty()) push("Color Biased", color_group_label(unrecoverable), color_added);
  if (!recoverable.empty()) push("Color Biased", color_group_label(recoverable), 0);

  push("Size Biased", "A^z", size_verdict(catalog.stud_count_range.min, catalog).affected_fraction);
  push("Orientation Biased", "A^o", orientation_verdict(0, catalog).affected_fraction);
  push("3D Pose Biased", "A^p", pose_verdict(pose_labels(catalog).front(), catalog).affected_fraction);
  push("Shape Biased", "A^s", shape_verdict(catalog.categories.front().name, catalog).affected_fraction);
  return rows;
}

CombinationMagnitude log10_combinations(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw Error(ErrorKind::invalid_argument, "k exceeds n in C(n, k)");
  const std::uint64_t j = std::min(k, n - k);
  if (j == 0) return {0.0, 1};
  if (j > kSumOfLogsLimit) return stirling_path(static_cast<long double>(n), static_cast<long double>(j));

  long double sum = 0.0L;
  for (std::uint64_t i = 1; i <= j; ++i) {
    sum += std::log10(static_cast<long double>(n - j + i) / static_cast<long double>(i));
  }
  if (j <= kExactDigitsLimit && n <= 1'000'000'000ULL) {
    BigInt c = 1;
    for (std::uint64_t i = 1; i <= j; ++i) {
      c *= (n - j + i);
      c /= i;
    }
    return {static_cast<double>(sum), static_cast<std::uint64_t>(c.str().size())};
  }
  return {static_cast<double>(sum), static_cast<std::uint64_t>(std::floor(sum)) + 1};
}

CombinationMagnitude log10_combinations(long double n, std::uint64_t k) {
  if (!std::isfinite(n) || n < 0) throw Error(ErrorKind::invalid_argument, "population size must be finite and >= 0");
  if (static_cast<long double>(k) > n) throw Error(ErrorKind::invalid_argument, "k exceeds n in C(n, k)");
  if (n < 9.2e18L && std::floor(n) == n) return log10_combinations(static_cast<std::uint64_t>(n), k);
  const long double j = std::min(static_cast<long double>(k), n - static_cast<long double>(k));
  if (j == 0) return {0.0, 1};
  return stirling_path(n, j);
}

}  // namespace biasprobe
