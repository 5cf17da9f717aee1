#include <doctest.h>

#include <random>
#include <string>

#include "biasprobe/bias.hpp"
#include "biasprobe/error.hpp"
#include "biasprobe/mixing.hpp"
#include "biasprobe/oracle.hpp"
#include "biasprobe/recover.hpp"

using namespace biasprobe;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::invalid_argument;
}

}  // namespace

TEST_SUITE("oracle") {
  const auto catalog = builtin_catalog();
  const auto rules = builtin_rules();

  TEST_CASE("dims [2,3], one value of the first withheld") {
    const DomainSpec d({indexed_dimension("a", 2), indexed_dimension("b", 3)});
    const auto bias = BiasSpec::single("a", {"1"});
    const auto r = brute_force_error(d, bias, VerdictFunction::all_unrecoverable(bias));
    CHECK(r.misclassified == 3);
    CHECK(r.population == 6);
    CHECK(r.empirical_fraction == Rational::from_integers(1, 2));
    CHECK(r.matches_closed_form);
    CHECK_FALSE(VerdictFunction::all_unrecoverable(bias).builtin_model);
  }

  TEST_CASE("no bias, nothing misclassified") {
    const DomainSpec d({indexed_dimension("a", 4)});
    const auto r = brute_force_error(d, BiasSpec{}, VerdictFunction{});
    CHECK(r.misclassified == 0);
    CHECK(r.matches_closed_form);
  }

  TEST_CASE("yellow on the colour-refined production domain") {
    const auto result = analyze(BiasSpec::single("color", {"yellow"}), catalog, rules);
    const auto d = color_refined_domain(catalog);
    const auto r = brute_force_error(d, result.bias, VerdictFunction::from_analysis(result));
    CHECK(r.empirical_fraction == Rational::from_integers(244'800, 1'468'800));
    CHECK(r.misclassified * 6 == r.population);
    CHECK(r.matches_closed_form);
  }

  TEST_CASE("Partial flags a prefix of the flag dimension") {
    const DomainSpec d({indexed_dimension("pose", 3, "p", 1), indexed_dimension("piece", 10)});
    AnalysisResult fake;
    fake.bias = BiasSpec::single("pose", {"p1"});
    fake.verdict = {Ruling::partial, Rational::from_integers(1, 4), "test", "", {}};
    fake.added_error = fake.verdict.affected_fraction;
    const auto r = brute_force_error(d, fake.bias, VerdictFunction::from_analysis(fake, "piece"));
    // ceil(10/4) = 3 pieces across all three poses.
    CHECK(r.misclassified == 9);
    CHECK_THROWS_AS(brute_force_error(d, fake.bias, VerdictFunction::from_analysis(fake)), Error);
  }

  TEST_CASE("independent of worker count") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto d = random_small_domain(seed, 4, 8);
      std::mt19937_64 rng(seed);
      const auto bias = random_single_entry_bias(d, rng);
      const auto vf = VerdictFunction::all_unrecoverable(bias);
      const auto one = brute_force_error(d, bias, vf, {kDefaultEnumerationBudget, 1});
      for (unsigned w : {2U, 3U, 7U, 16U}) {
        const auto many = brute_force_error(d, bias, vf, {kDefaultEnumerationBudget, w});
        REQUIRE(many.misclassified == one.misclassified);
        REQUIRE(many.population == one.population);
      }
    }
  }

  TEST_CASE("random domains: seeded, bounded, proper biases") {
    CHECK(random_small_domain(42, 4, 6) == random_small_domain(42, 4, 6));
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      const auto d = random_small_domain(seed, 5, 12);
      REQUIRE(population_size(d) <= 100'000);
      REQUIRE(d.rank() >= 1);
      REQUIRE(d.rank() <= 5);
      for (const auto& dim : d.dimensions()) REQUIRE(dim.cardinality() >= 2);
      std::mt19937_64 rng(seed);
      REQUIRE_NOTHROW(validate_bias(d, random_single_entry_bias(d, rng)));
    }
    CHECK_THROWS_AS(random_small_domain(1, 0, 3), Error);
  }

  TEST_CASE("oracle equals closed form over seeded domains") {
    CHECK(run_oracle_property_suite(1, 150) == 150);
    const auto d = random_small_domain(7, 3, 4);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
      const auto bias = random_single_entry_bias(d, rng);
      const auto r = brute_force_error(d, bias, VerdictFunction::all_unrecoverable(bias));
      REQUIRE(r.empirical_fraction == apply_bias(d, bias).withheld_fraction);
    }
  }

  TEST_CASE("table2 verification passes on the builtin catalog") {
    const auto checks = verify_table2(catalog, rules);
    CHECK(checks.size() == 12);
    for (const auto& c : checks) {
      CAPTURE(c.row);
      CHECK(c.passed);
      if (c.row == "shape") CHECK(c.oracle.misclassified == 9504);
      if (c.row == "orientation") CHECK(c.oracle.misclassified == 0);
      if (c.row == "color (yellow)") CHECK(c.production_equivalent == Rational(244'800));
      if (c.row == "pose") CHECK(c.oracle.empirical_fraction == Rational::from_integers(3, 25));
      if (c.row == "size") CHECK(c.oracle.empirical_fraction == Rational::from_integers(21, 1130));
    }
  }

  TEST_CASE("a perturbed catalog is caught and the row named") {
    auto broken = catalog;
    broken.unique_type_count_for_error = 1131;
    try {
      verify_table2(broken, rules);
      FAIL("expected a mismatch");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::mismatch);
      CHECK(std::string(e.what()).find("'size'") != std::string::npos);
    }
  }

  TEST_CASE("budget") {
    CHECK(kind_of([&] { verify_table2(catalog, rules, {10, 1}); }) == ErrorKind::budget_exceeded);
    const DomainSpec d({indexed_dimension("a", 20)});
    const auto bias = BiasSpec::single("a", {"0"});
    CHECK(kind_of([&] { brute_force_error(d, bias, VerdictFunction::all_unrecoverable(bias), {19, 1}); }) ==
          ErrorKind::budget_exceeded);
    CHECK_NOTHROW(brute_force_error(d, bias, VerdictFunction::all_unrecoverable(bias), {20, 1}));
  }

  TEST_CASE("two-entry bias: oracle against inclusion-exclusion") {
    const DomainSpec d({indexed_dimension("a", 4), indexed_dimension("b", 5), indexed_dimension("c", 3)});
    const BiasSpec bias{{{"a", {"0", "1"}}, {"c", {"2"}}}};
    const auto r = brute_force_error(d, bias, VerdictFunction::all_unrecoverable(bias));
    // 1 - (2/4)(2/3) = 2/3
    CHECK(r.empirical_fraction == Rational::from_integers(2, 3));
    CHECK(r.matches_closed_form);
  }
}
