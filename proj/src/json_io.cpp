#include "biasprobe/json_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "biasprobe/error.hpp"

namespace biasprobe {

namespace {

Json bigint_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

BigInt bigint_from_json(const Json& j, const char* field) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? BigInt(j.get<std::uint64_t>()) : BigInt(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    const Rational r = parse_rational(j.get<std::string>());
    if (r.denominator() == 1) return r.numerator();
  }
  throw Error(ErrorKind::parse, std::string("rational field '") + field + "' must be an integer");
}

}  // namespace

Json rational_to_json(const Rational& r) {
  Json j;
  j["num"] = bigint_to_json(r.numerator());
  j["den"] = bigint_to_json(r.denominator());
  return j;
}

Rational rational_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) {
    throw Error(ErrorKind::parse, "rational must be an object with 'num' and 'den'");
  }
  return Rational::from_integers(bigint_from_json(j.at("num"), "num"), bigint_from_json(j.at("den"), "den"));
}

Json rendered_rational_to_json(const Rational& r) {
  Json j = rational_to_json(r);
  j["decimal"] = render_decimal(r, 6);
  return j;
}

Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::parse, std::string(what) + ": " + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace biasprobe
