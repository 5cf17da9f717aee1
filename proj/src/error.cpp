#include "biasprobe/error.hpp"

namespace biasprobe {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parse: return "parse error";
    case ErrorKind::validation: return "validation error";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::budget_exceeded: return "budget exceeded";
    case ErrorKind::unknown_dimension: return "unknown dimension";
    case ErrorKind::unknown_value: return "unknown value";
    case ErrorKind::all_values_withheld: return "all values withheld";
    case ErrorKind::unsupported_dimension: return "unsupported dimension";
    case ErrorKind::unsupported_bias: return "unsupported bias";
    case ErrorKind::out_of_range: return "out of range";
    case ErrorKind::zero_denominator: return "zero denominator";
    case ErrorKind::mismatch: return "mismatch";
    case ErrorKind::invalid_argument: return "invalid argument";
  }
  return "error";
}

}  // namespace biasprobe
