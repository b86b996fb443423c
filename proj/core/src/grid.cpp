#include "rspdc/grid.hpp"

#include <cmath>

#include "rspdc/errors.hpp"

namespace rspdc {

std::vector<double> UniformAxis::values() const {
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = at(i);
  return v;
}

UniformAxis UniformAxis::linspace(double lo, double hi, std::size_t count) {
  if (count < 2) throw ValidationError("linspace needs at least two samples");
  return UniformAxis{lo, (hi - lo) / static_cast<double>(count - 1), count};
}

void UniformAxis::validate(std::size_t min_count) const {
  if (count < min_count) {
    throw ValidationError("axis has " + std::to_string(count) + " samples, need at least " +
                          std::to_string(min_count));
  }
  if (!(step > 0.0) || !std::isfinite(start)) {
    throw ValidationError("axis must be strictly increasing and finite");
  }
}

bool UniformAxis::matches(const UniformAxis& other, double rel_tol) const {
  if (count != other.count) return false;
  const double scale = std::max(std::abs(start), std::abs(step));
  return std::abs(start - other.start) <= rel_tol * scale &&
         std::abs(step - other.step) <= rel_tol * std::abs(step);
}

std::vector<double> trapezoid_weights(const UniformAxis& axis) {
  std::vector<double> w(axis.count, axis.step);
  if (axis.count >= 2) {
    w.front() *= 0.5;
    w.back() *= 0.5;
  }
  return w;
}

}  // namespace rspdc
