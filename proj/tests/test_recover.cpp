#include <doctest.h>

#include <set>

#include "biasprobe/error.hpp"
#include "biasprobe/mixing.hpp"
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

const Rational* note(const RecoverabilityVerdict& v, const std::string& label) {
  for (const auto& n : v.notes)
    if (n.label == label) return &n.value;
  return nullptr;
}

}  // namespace

TEST_SUITE("recover") {
  const auto catalog = builtin_catalog();
  const auto rules = builtin_rules();

  TEST_CASE("colour") {
    for (const char* c : {"yellow", "blue", "red"}) {
      const auto v = color_verdict(c, catalog, rules);
      CHECK(v.ruling == Ruling::unrecoverable);
      CHECK(v.affected_fraction == Rational::from_integers(1, 6));
    }
    for (const char* c : {"green", "black", "white"}) {
      const auto v = color_verdict(c, catalog, rules);
      CHECK(v.ruling == Ruling::recoverable);
      CHECK(v.affected_fraction.is_zero());
    }
    CHECK(kind_of([&] { color_verdict("mauve", catalog, rules); }) == ErrorKind::unknown_value);
  }

  TEST_CASE("colour verdict agrees with the closure") {
    for (const auto& c : catalog.staple_colors) {
      ColorSet others(catalog.staple_colors.begin(), catalog.staple_colors.end());
      others.erase(c);
      const bool r = reachable(c, others, rules, ModelSet::both());
      CHECK((color_verdict(c, catalog, rules).ruling == Ruling::unrecoverable) == !r);
    }
  }

  TEST_CASE("size") {
    for (std::uint64_t studs : {1, 4, 54}) {
      const auto v = size_verdict(studs, catalog);
      CHECK(v.ruling == Ruling::partial);
      CHECK(v.affected_fraction == Rational::from_integers(21, 1130));
      REQUIRE(note(v, "types_per_stud_count"));
      CHECK(*note(v, "types_per_stud_count") == Rational(21));
    }
    CHECK(kind_of([&] { size_verdict(0, catalog); }) == ErrorKind::out_of_range);
    CHECK(kind_of([&] { size_verdict(55, catalog); }) == ErrorKind::out_of_range);
  }

  TEST_CASE("orientation") {
    for (std::uint64_t bin : {0, 13, 71}) {
      const auto v = orientation_verdict(bin, catalog);
      CHECK(v.ruling == Ruling::recoverable);
      CHECK(v.affected_fraction == Rational(0));
      CHECK(v.rule_id == "in-plane-augmentation-closure");
    }
    CHECK(kind_of([&] { orientation_verdict(72, catalog); }) == ErrorKind::out_of_range);
  }

  TEST_CASE("pose") {
    const auto v = pose_verdict("p2", catalog);
    CHECK(v.ruling == Ruling::partial);
    CHECK(v.affected_fraction == Rational::from_integers(12, 100));
    REQUIRE(note(v, "exact_alternative"));
    CHECK(*note(v, "exact_alternative") == Rational::from_integers(132, 1130));
    CHECK(render_decimal(*note(v, "exact_alternative"), 6) == "0.116814");
    CHECK(*note(v, "cube_aspects_affected") == Rational::from_integers(9, 26));
    CHECK(kind_of([&] { pose_verdict("p4", catalog); }) == ErrorKind::unknown_value);
  }

  TEST_CASE("shape") {
    const auto v = shape_verdict("Slopes", catalog);
    CHECK(v.ruling == Ruling::partial);
    CHECK(v.affected_fraction == Rational::from_integers(9504, 1'468'800));
    CHECK(*note(v, "remaining_correct_types") == Rational(414));
    CHECK(*note(v, "misclassified_images") == Rational(22 * 6 * 72));
    for (const auto& c : catalog.categories) CHECK(shape_verdict(c.name, catalog).affected_fraction == v.affected_fraction);
    CHECK(kind_of([&] { shape_verdict("Gears", catalog); }) == ErrorKind::unknown_value);
  }

  TEST_CASE("analyze dispatch") {
    auto r = analyze(BiasSpec::single("color", {"red"}), catalog, rules);
    CHECK(r.network_label == "A^c");
    CHECK(r.added_error == Rational::from_integers(1, 6));
    r = analyze(BiasSpec::single("orientation", {"13"}), catalog, rules);
    CHECK(r.network_label == "A^o");
    CHECK(r.added_error.is_zero());
    r = analyze(BiasSpec::single("pose", {"p1"}), catalog, rules);
    CHECK(r.network_label == "A^p");
    CHECK(r.added_error == Rational::from_integers(3, 25));
    CHECK(analyze(BiasSpec::single("size", {"4"}), catalog, rules).network_label == "A^z");
    CHECK(analyze(BiasSpec::single("shape", {"Slopes"}), catalog, rules).network_label == "A^s");

    CHECK(kind_of([&] { analyze(BiasSpec::single("weather", {"snow"}), catalog, rules); }) ==
          ErrorKind::unsupported_dimension);
    CHECK(kind_of([&] { analyze(BiasSpec::single("color", {"red", "blue"}), catalog, rules); }) ==
          ErrorKind::unsupported_bias);
    CHECK(kind_of([&] {
            analyze(BiasSpec{{{"color", {"red"}}, {"pose", {"p1"}}}}, catalog, rules);
          }) == ErrorKind::unsupported_bias);
    CHECK(kind_of([&] { analyze(BiasSpec::single("size", {"four"}), catalog, rules); }) == ErrorKind::unknown_value);
  }

  TEST_CASE("regression pin: the set of added errors over every value") {
    std::set<std::string> seen;
    const auto domain = analysis_domain(catalog);
    for (const auto& d : domain.dimensions()) {
      for (const auto& v : d.values) {
        const auto r = analyze(BiasSpec::single(d.name, {v}), catalog, rules);
        CHECK(r.added_error == r.verdict.affected_fraction);
        CHECK(r.verdict.affected_fraction.is_canonical());
        CHECK((r.verdict.ruling == Ruling::recoverable) == r.added_error.is_zero());
        seen.insert(r.added_error.str());
      }
    }
    const std::set<std::string> pinned = {"0", "1/6", "21/1130", "3/25", Rational::from_integers(9504, 1'468'800).str()};
    CHECK(seen == pinned);
  }

  TEST_CASE("deterministic and JSON round-trip") {
    const auto a = analyze(BiasSpec::single("pose", {"p3"}), catalog, rules);
    CHECK(a == analyze(BiasSpec::single("pose", {"p3"}), catalog, rules));
    CHECK(analysis_from_json(analysis_to_json(a)) == a);
    CHECK(parse_ruling(to_string(Ruling::partial)) == Ruling::partial);
  }
}
