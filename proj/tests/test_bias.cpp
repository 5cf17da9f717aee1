#include <doctest.h>

#include <random>

#include "biasprobe/bias.hpp"
#include "biasprobe/catalog.hpp"
#include "biasprobe/error.hpp"
#include "biasprobe/oracle.hpp"

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

// Test-local filter over the enumeration, independent of apply_bias.
std::uint64_t count_withheld(const DomainSpec& domain, const BiasSpec& bias) {
  std::uint64_t n = 0;
  for (const auto& inst : enumerate(domain)) {
    bool hit = false;
    for (const auto& entry : bias.entries) {
      const auto d = domain.find(entry.dimension);
      for (const auto& v : entry.withheld) hit = hit || inst.label(domain, d) == v;
    }
    n += hit ? 1 : 0;
  }
  return n;
}

}  // namespace

TEST_SUITE("bias") {
  const auto catalog = builtin_catalog();
  const auto refined = color_refined_domain(catalog);

  TEST_CASE("validate_bias") {
    CHECK_NOTHROW(validate_bias(refined, BiasSpec::single("color", {"yellow"})));
    CHECK(kind_of([&] { validate_bias(refined, BiasSpec::single("weather", {"snow"})); }) ==
          ErrorKind::unknown_dimension);
    CHECK(kind_of([&] { validate_bias(refined, BiasSpec::single("color", {"mauve"})); }) ==
          ErrorKind::unknown_value);
    CHECK(kind_of([&] { validate_bias(refined, BiasSpec::single("color", catalog.staple_colors)); }) ==
          ErrorKind::all_values_withheld);
    CHECK(kind_of([&] { validate_bias(refined, BiasSpec{}); }) == ErrorKind::validation);
    CHECK(kind_of([&] {
            validate_bias(refined, BiasSpec{{{"color", {"red"}}, {"color", {"blue"}}}});
          }) == ErrorKind::validation);
  }

  TEST_CASE("error messages name the offending entry") {
    try {
      validate_bias(refined, BiasSpec::single("color", {"mauve"}));
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("'color'") != std::string::npos);
      CHECK(std::string(e.what()).find("mauve") != std::string::npos);
    }
  }

  TEST_CASE("withholding one staple colour loses a sixth") {
    const auto app = apply_bias(refined, BiasSpec::single("color", {"yellow"}));
    CHECK(app.withheld_fraction == Rational::from_integers(1, 6));
    CHECK(app.training_size + app.withheld_size == population_size(refined));
  }

  TEST_CASE("one of two values is a half") {
    const DomainSpec d(std::vector<AttributeDimension>{{"a", {"x", "y"}}, indexed_dimension("b", 7)});
    CHECK(apply_bias(d, BiasSpec::single("a", {"y"})).withheld_fraction == Rational::from_integers(1, 2));
  }

  TEST_CASE("two biased dimensions: inclusion-exclusion against hand enumeration") {
    const DomainSpec d(std::vector<AttributeDimension>{{"a", {"a0", "a1"}}, {"b", {"b0", "b1", "b2"}}});
    const BiasSpec bias{{{"a", {"a1"}}, {"b", {"b2"}}}};
    // Instances with a=a1 or b=b2: (a0,b2), (a1,b0), (a1,b1), (a1,b2).
    std::uint64_t by_hand = 0;
    for (const char* a : {"a0", "a1"}) {
      for (const char* b : {"b0", "b1", "b2"}) by_hand += (std::string(a) == "a1" || std::string(b) == "b2") ? 1 : 0;
    }
    CHECK(by_hand == 4);
    const auto app = apply_bias(d, bias);
    CHECK(app.withheld_size == by_hand);
    CHECK(app.withheld_fraction == Rational::from_integers(2, 3));
  }

  TEST_CASE("property: apply_bias equals enumeration filter, lies in (0,1), is monotone") {
    std::mt19937_64 rng(77);
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
      const auto d = random_small_domain(seed, 4, 6);
      auto bias = random_single_entry_bias(d, rng);
      const auto app = apply_bias(d, bias);
      REQUIRE(app.withheld_size == count_withheld(d, bias));
      REQUIRE(app.withheld_fraction > Rational(0));
      REQUIRE(app.withheld_fraction < Rational(1));

      // Adding another withheld value (while staying proper) never lowers the share.
      const auto& dimension = d.dimension(bias.entries[0].dimension);
      for (const auto& v : dimension.values) {
        auto& w = bias.entries[0].withheld;
        if (std::find(w.begin(), w.end(), v) != w.end() || w.size() + 1 >= dimension.cardinality()) continue;
        auto bigger = bias;
        bigger.entries[0].withheld.push_back(v);
        REQUIRE(apply_bias(d, bigger).withheld_fraction >= app.withheld_fraction);
        break;
      }

      // A second entry on another dimension, counted both ways.
      if (d.rank() > 1) {
        std::mt19937_64 rng2(seed);
        for (int tries = 0; tries < 4; ++tries) {
          auto extra = random_single_entry_bias(d, rng2);
          if (extra.entries[0].dimension == bias.entries[0].dimension) continue;
          BiasSpec combined{{bias.entries[0], extra.entries[0]}};
          REQUIRE(apply_bias(d, combined).withheld_size == count_withheld(d, combined));
          REQUIRE(apply_bias(d, combined).withheld_fraction >= app.withheld_fraction);
          break;
        }
      }
    }
  }

  TEST_CASE("bias-spec file round-trip") {
    const BiasSpec bias{{{"color", {"yellow"}}, {"orientation", {"3", "4"}}}};
    CHECK(parse_bias_spec(bias_to_json(bias).dump()) == bias);
    CHECK(parse_bias_spec(R"([{"dimension": "orientation", "withheld": [13]}])") ==
          BiasSpec::single("orientation", {"13"}));
    CHECK(kind_of([] { parse_bias_spec(R"({"dimension": "color"})"); }) == ErrorKind::parse);
  }
}
