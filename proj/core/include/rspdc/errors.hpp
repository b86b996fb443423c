#pragma once

#include <stdexcept>
#include <string>

namespace rspdc {

/// Input outside the physical domain of a model (band, angle, sign).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed parameters, files, or configurations.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation that could not produce a trustworthy number.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rspdc
