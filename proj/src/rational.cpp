#include "biasprobe/rational.hpp"

#include <ostream>

#include <boost/integer/common_factor_rt.hpp>

#include "biasprobe/error.hpp"

namespace biasprobe {

namespace {

BigInt abs_value(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

BigInt floor_div(const BigInt& a, const BigInt& b) {
  // b > 0
  BigInt q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

}  // namespace

Rational Rational::from_integers(const BigInt& n, const BigInt& d) {
  if (d == 0) throw Error(ErrorKind::zero_denominator, "rational with zero denominator");
  Rational r(n, d, false);
  r.normalize();
  return r;
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g = boost::multiprecision::gcd(abs_value(num_), den_);
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

bool Rational::is_canonical() const {
  if (den_ <= 0) return false;
  if (num_ == 0) return den_ == 1;
  return boost::multiprecision::gcd(abs_value(num_), den_) == 1;
}

Rational& Rational::operator+=(const Rational& rhs) {
  num_ = num_ * rhs.den_ + rhs.num_ * den_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  num_ = num_ * rhs.den_ - rhs.num_ * den_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw Error(ErrorKind::zero_denominator, "division by zero rational");
  num_ *= rhs.den_;
  den_ *= rhs.num_;
  normalize();
  return *this;
}

Rational Rational::operator-() const { return Rational(-num_, den_, true); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const BigInt lhs = a.num_ * b.den_;
  const BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

double Rational::to_double() const {
  return static_cast<double>(boost::multiprecision::cpp_rational(num_, den_));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::string render_decimal(const Rational& r, unsigned places) {
  BigInt scale = boost::multiprecision::pow(BigInt(10), places);
  // floor((2 * a * 10^p + b) / (2 * b))
  BigInt scaled = floor_div(2 * r.numerator() * scale + r.denominator(), 2 * r.denominator());

  const bool negative = scaled < 0;
  std::string digits = abs_value(scaled).str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');

  std::string out = negative ? "-" : "";
  out += digits.substr(0, digits.size() - places);
  if (places > 0) {
    out += '.';
    out += digits.substr(digits.size() - places);
  }
  return out;
}

Rational parse_rational(const std::string& text) {
  auto parse_int = [&](const std::string& part) {
    if (part.empty()) throw Error(ErrorKind::parse, "malformed rational '" + text + "'");
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) throw Error(ErrorKind::parse, "malformed rational '" + text + "'");
    for (std::size_t j = i; j < part.size(); ++j) {
      if (part[j] < '0' || part[j] > '9') {
        throw Error(ErrorKind::parse, "malformed rational '" + text + "'");
      }
    }
    // cpp_int reads a leading 0 as an octal prefix; strip it.
    std::size_t first_digit = i;
    while (first_digit + 1 < part.size() && part[first_digit] == '0') ++first_digit;
    BigInt v(part.substr(first_digit));
    return part[0] == '-' ? BigInt(-v) : v;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational::from_integers(parse_int(text), 1);
  return Rational::from_integers(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

}  // namespace biasprobe
