#pragma once

#include <stdexcept>

namespace crossint {

// Precondition violation: bad parameters, incompatible ground sets,
// malformed input. Maps to CLI exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration would exceed its explicit budget. Budgets are preconditions:
// exceeding one is an error, never a silent truncation. CLI exit code 3.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crossint
