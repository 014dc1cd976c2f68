#pragma once

#include <stdexcept>
#include <string>

namespace tdga {

// Which parameter rule a ParameterError is reporting.
enum class ParamFault {
  not_prime,
  characteristic_two,
  bad_extension,
  reducible_modulus,
  word_overflow,
  group_too_small,
  characteristic_not_dividing_order,
  square_lambda,
  degenerate_h,
  malformed,
};

class ParameterError : public std::invalid_argument {
 public:
  ParameterError(ParamFault fault, const std::string& what)
      : std::invalid_argument(what), fault_(fault) {}

  ParamFault fault() const noexcept { return fault_; }

 private:
  ParamFault fault_;
};

/// An operation was applied outside its mathematical domain (0^-1, out of range index, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An enumeration or table would exceed the configured bound.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace tdga
