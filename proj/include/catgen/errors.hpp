#pragma once

#include <stdexcept>
#include <string>

namespace catgen {

/// Covariance matrix that is not symmetric positive definite (within tolerance).
class DegenerateCovariance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A heralding probability fell below the representable range.
class Underflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncated Fock space too small for the requested accuracy.
class LeakageExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace catgen
