#include <doctest.h>

#include <cstdint>
#include <numeric>
#include <random>

#include "biasprobe/error.hpp"
#include "biasprobe/rational.hpp"

using namespace biasprobe;

namespace {

// Reference fraction on plain 64-bit integers, reduced with std::gcd.
struct SmallFraction {
  std::int64_t num;
  std::int64_t den;
};

SmallFraction reduce(std::int64_t n, std::int64_t d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const auto g = std::gcd(n, d);
  return n == 0 ? SmallFraction{0, 1} : SmallFraction{n / g, d / g};
}

bool same(const Rational& r, SmallFraction f) {
  return r.numerator() == f.num && r.denominator() == f.den;
}

}  // namespace

TEST_SUITE("rational") {
  TEST_CASE("construction canonicalizes") {
    CHECK(Rational::from_integers(244800, 1468800) == Rational::from_integers(1, 6));
    CHECK(Rational::from_integers(18, 1'000'000).str() == "9/500000");
    CHECK(Rational::from_integers(3, -6).str() == "-1/2");
    CHECK(Rational::from_integers(0, -7).denominator() == 1);
    CHECK_THROWS_AS(Rational::from_integers(1, 0), Error);
  }

  TEST_CASE("colour bound sum matches an independent 64-bit computation") {
    const auto expected = reduce(1 * 1'000'000 + 18 * 6, 6 * 1'000'000);
    CHECK(expected.num == 250027);
    CHECK(expected.den == 1500000);
    CHECK(same(Rational::from_integers(1, 6) + Rational::from_integers(18, 1'000'000), expected));
  }

  TEST_CASE("additive identity") {
    const auto x = Rational::from_integers(21, 1130);
    CHECK(x + Rational::from_integers(0, 1) == x);
    CHECK(x * Rational(1) == x);
  }

  TEST_CASE("ordering") {
    CHECK(Rational::from_integers(1, 3) < Rational::from_integers(1, 2));
    CHECK(Rational::from_integers(-1, 2) < Rational(0));
    CHECK(Rational::from_integers(2, 4) == Rational::from_integers(1, 2));
  }

  TEST_CASE("render_decimal rounds half up from the exact value") {
    CHECK(render_decimal(Rational::from_integers(1, 6) + Rational::from_integers(18, 1'000'000), 6) == "0.166685");
    CHECK(render_decimal(Rational(0), 6) == "0.000000");
    CHECK(render_decimal(Rational::from_integers(21, 1130) + Rational::from_integers(18, 1'000'000), 6) ==
          "0.018602");
    CHECK(render_decimal(Rational::from_integers(1, 8), 2) == "0.13");
    CHECK(render_decimal(Rational::from_integers(-1, 8), 2) == "-0.12");
    CHECK(render_decimal(Rational::from_integers(5, 2), 0) == "3");
    CHECK(render_decimal(Rational::from_integers(7, 1), 3) == "7.000");
    CHECK(render_decimal(Rational::from_integers(1, 3), 0) == "0");
  }

  TEST_CASE("render_decimal is within half a unit of the value") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> num(-100000, 100000), den(1, 100000);
    for (int i = 0; i < 2000; ++i) {
      const auto r = Rational::from_integers(num(rng), den(rng));
      const auto rendered = render_decimal(r, 6);
      const auto back = parse_rational(rendered.substr(0, rendered.find('.')) + rendered.substr(rendered.find('.') + 1) +
                                       "/1000000");
      const auto diff = back - r;
      CHECK(diff <= Rational::from_integers(1, 2'000'000));
      CHECK(diff > Rational::from_integers(-1, 2'000'000));
    }
  }

  TEST_CASE("parse_rational") {
    CHECK(parse_rational("18/1000000") == Rational::from_integers(9, 500000));
    CHECK(parse_rational("-4") == Rational(-4));
    CHECK(parse_rational("018/0100") == Rational::from_integers(18, 100));
    CHECK_THROWS_AS(parse_rational("1/x"), Error);
    CHECK_THROWS_AS(parse_rational(""), Error);
  }

  TEST_CASE("property: add and multiply agree with 64-bit reference and stay canonical") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::int64_t> num(-5000, 5000), den(1, 5000);
    Rational acc = 0;
    for (int i = 0; i < 10'000; ++i) {
      const std::int64_t an = num(rng), ad = den(rng), bn = num(rng), bd = den(rng);
      const auto a = Rational::from_integers(an, ad);
      const auto b = Rational::from_integers(bn, bd);
      const auto sum = a + b;
      const auto product = a * b;
      REQUIRE(sum.is_canonical());
      REQUIRE(product.is_canonical());
      REQUIRE(same(sum, reduce(an * bd + bn * ad, ad * bd)));
      REQUIRE(same(product, reduce(an * bn, ad * bd)));
      REQUIRE(a + b == b + a);
      REQUIRE(a * b == b * a);
      const auto c = Rational::from_integers(num(rng), den(rng));
      REQUIRE((a + b) + c == a + (b + c));
      REQUIRE((a * b) * c == a * (b * c));

      // Long chains grow the big integers; canonical form must survive.
      acc = (i % 2 == 0) ? acc + a : acc * Rational::from_integers(bd, 1 + (bn < 0 ? -bn : bn));
      REQUIRE(acc.is_canonical());
      if (i % 64 == 0) acc = 0;
    }
  }
}
