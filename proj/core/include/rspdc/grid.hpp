#pragma once

#include <cstddef>
#include <vector>

namespace rspdc {

/// start + i * step for i in [0, count).
struct UniformAxis {
  double start = 0.0;
  double step = 1.0;
  std::size_t count = 0;

  double at(std::size_t i) const { return start + static_cast<double>(i) * step; }
  double back() const { return at(count - 1); }
  double span() const { return count > 1 ? step * static_cast<double>(count - 1) : 0.0; }
  std::vector<double> values() const;

  /// Axis with `count` samples from lo to hi inclusive.
  static UniformAxis linspace(double lo, double hi, std::size_t count);
  /// Throws ValidationError unless count >= min_count and step > 0.
  void validate(std::size_t min_count = 2) const;
  /// Same start, step and count within a relative tolerance.
  bool matches(const UniformAxis& other, double rel_tol = 1e-12) const;
};

/// Trapezoidal quadrature weights for an axis.
std::vector<double> trapezoid_weights(const UniformAxis& axis);

}  // namespace rspdc
