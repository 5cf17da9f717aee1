#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace biasprobe {

using BigInt = boost::multiprecision::cpp_int;

/// Exact fraction over arbitrary-precision integers.
///
/// Always held in canonical form: the denominator is positive and shares no
/// factor with the numerator, and zero is 0/1. Two rationals are equal iff
/// their numerators and denominators are equal.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)

  /// Throws Error(zero_denominator) when `d` is zero.
  static Rational from_integers(const BigInt& n, const BigInt& d);

  const BigInt& numerator() const noexcept { return num_; }
  const BigInt& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_canonical() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "n/d", or just "n" when the denominator is 1.
  std::string str() const;

  /// Nearest double; for display only, never for accounting.
  double to_double() const;

 private:
  Rational(BigInt n, BigInt d, bool /*canonical*/) : num_(std::move(n)), den_(std::move(d)) {}
  void normalize();

  BigInt num_;
  BigInt den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Round-half-up decimal rendering with exactly `places` fractional digits,
/// computed in integer arithmetic as floor(a * 10^places / b + 1/2).
std::string render_decimal(const Rational& r, unsigned places);

/// Parses "n/d" or "n". Throws Error(parse) on malformed input.
Rational parse_rational(const std::string& text);

}  // namespace biasprobe
