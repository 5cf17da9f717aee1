#pragma once

#include <stdexcept>
#include <string>

namespace biasprobe {

enum class ErrorKind {
  parse,
  validation,
  overflow,
  budget_exceeded,
  unknown_dimension,
  unknown_value,
  all_values_withheld,
  unsupported_dimension,
  unsupported_bias,
  out_of_range,
  zero_denominator,
  mismatch,
  invalid_argument,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace biasprobe
