#pragma once

#include <stdexcept>
#include <string>

namespace prefspace {

// Requested size exceeds what a module is willing to enumerate.
struct SizeError : std::length_error {
  using std::length_error::length_error;
};

// Input violates an operation's stated precondition.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Claim or oracle asked about a size/ambient where it is not defined.
struct ScopeError : std::domain_error {
  using std::domain_error::domain_error;
};

// Numeric argument outside a function's domain (negative bundle, alpha not interior).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace prefspace
