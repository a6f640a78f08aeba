#pragma once

#include <stdexcept>
#include <string>

namespace froblen {

// Violated precondition on user-supplied input (non-prime modulus, p | n, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation would exceed a configured size or iteration cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The operation is only defined over finite fields.
class UnsupportedDomainError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace froblen
