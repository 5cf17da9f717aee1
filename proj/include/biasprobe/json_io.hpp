#pragma once

#include <nlohmann/json.hpp>

#include "biasprobe/rational.hpp"

namespace biasprobe {

using Json = nlohmann::ordered_json;

/// {"num": n, "den": d}; components that do not fit in 64 bits are written
/// as decimal strings.
Json rational_to_json(const Rational& r);
/// Accepts integers or decimal strings for either component.
Rational rational_from_json(const Json& j);

/// Exact value plus its 6-place rendering: {"num", "den", "decimal"}.
Json rendered_rational_to_json(const Rational& r);

/// Parses text as JSON, mapping syntax errors to Error(parse).
Json parse_json(std::string_view text, std::string_view what);
std::string read_text_file(const std::string& path);

}  // namespace biasprobe
