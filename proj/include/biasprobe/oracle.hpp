#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "biasprobe/bias.hpp"
#include "biasprobe/catalog.hpp"
#include "biasprobe/domain.hpp"
#include "biasprobe/mixing.hpp"
#include "biasprobe/rational.hpp"
#include "biasprobe/recover.hpp"

namespace biasprobe {

/// Turns per-value verdicts into a per-instance misclassification predicate.
///
/// An instance is misclassified when it carries a withheld value whose verdict
/// is Unrecoverable, or when it falls in the flagged subset of a Partial
/// verdict. Partial fractions are population-wide shares of affected types,
/// so the flagged subset is the first ceil(fraction * |flag_dimension|)
/// values of `flag_dimension`, regardless of the biased value. Any
/// deterministic subset of that size gives the same count.
struct VerdictFunction {
  std::map<std::pair<std::string, std::string>, RecoverabilityVerdict> verdicts;  // (dimension, value)
  std::string flag_dimension;
  bool builtin_model = true;

  /// Every withheld value of `bias` ruled Unrecoverable; marked as a user
  /// model.
  static VerdictFunction all_unrecoverable(const BiasSpec& bias);
  /// The verdict of a closed-form analysis.
  static VerdictFunction from_analysis(const AnalysisResult& result, std::string flag_dimension = {});
};

struct OracleResult {
  std::uint64_t misclassified = 0;
  std::uint64_t population = 0;
  Rational empirical_fraction;
  std::optional<Rational> closed_form;  // absent when no closed form exists
  bool matches_closed_form = false;
};

struct OracleOptions {
  std::uint64_t budget = kDefaultEnumerationBudget;
  unsigned workers = 0;  // 0: hardware concurrency
};

/// Closed-form share of misclassified instances: the withheld share of the
/// Unrecoverable values combined with the flagged share of Partial verdicts
/// (independent dimensions, so u + p - u*p). Empty for combinations with no
/// closed form (Partial verdicts in multi-entry biases, or Partial flagging
/// the biased dimension itself).
std::optional<Rational> closed_form_fraction(const DomainSpec& domain, const BiasSpec& bias,
                                             const VerdictFunction& verdicts);

/// Counts misclassified instances over the whole enumerated population and
/// compares the share with closed_form_fraction. Entries naming dimensions
/// absent from `domain` are allowed only when none of their verdicts is
/// Unrecoverable. Throws Error(budget_exceeded) past the budget.
OracleResult brute_force_error(const DomainSpec& domain, const BiasSpec& bias, const VerdictFunction& verdicts,
                               const OracleOptions& options = {});

/// Seeded domain with 1..max_dims dimensions of 2..max_values values each and
/// at most 10^5 instances.
DomainSpec random_small_domain(std::uint64_t seed, std::size_t max_dims, std::size_t max_values);

/// One dimension, a non-empty proper subset of its values.
BiasSpec random_single_entry_bias(const DomainSpec& domain, std::mt19937_64& rng);

struct Table2Check {
  std::string row;
  std::string network_label;
  std::string domain_description;
  OracleResult oracle;
  Rational reference;  // expected share for this row
  /// oracle share scaled to the production population
  Rational production_equivalent;
  bool passed = false;
};

/// Brute-force check of every table2 row on a production-sized domain:
/// oracle share == closed form == reference share, exactly.
std::vector<Table2Check> run_table2_checks(const BrickCatalog& catalog, const RuleSet& rules,
                                           const OracleOptions& options = {});

/// As run_table2_checks, but throws Error(mismatch) naming the first failing
/// row.
std::vector<Table2Check> verify_table2(const BrickCatalog& catalog, const RuleSet& rules,
                                       const OracleOptions& options = {});

/// Oracle-versus-closed-form equality over `count` seeded random domains,
/// each with a random single-entry, all-Unrecoverable bias. Throws
/// Error(mismatch) naming the seed of the first disagreement; returns the
/// number of domains checked.
std::size_t run_oracle_property_suite(std::uint64_t first_seed, std::size_t count, const OracleOptions& options = {});

}  // namespace biasprobe
