#pragma once

#include <stdexcept>
#include <string>

namespace gcngeom {

/// Raised when an input file is missing or unreadable.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when inputs violate a documented precondition.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a normalizer would divide by zero (isolated node, empty row).
class DivisionByZeroError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace gcngeom
