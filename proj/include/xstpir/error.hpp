#pragma once

#include <stdexcept>
#include <string>

namespace xstpir {

// Caller passed arguments that violate an operation's contract
// (mismatched fields, wrong dimensions, index out of range).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The field is too small for the requested evaluation points.
class InsufficientField : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Something that cannot happen under honest execution did happen.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class EnumerationCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace xstpir
