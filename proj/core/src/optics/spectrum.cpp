#include "rspdc/optics/spectrum.hpp"

#include <cmath>

#include "rspdc/errors.hpp"

namespace rspdc::optics {

std::vector<double> TransmissionSpectrum::transmittance() const {
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = std::norm(t[i]);
  return out;
}

TransmissionSpectrum transmission_spectrum(const LayerStack& stack, const UniformAxis& omega_grid,
                                           double theta_ext, Incidence incidence) {
  omega_grid.validate(1);
  const double s = std::sin(theta_ext);
  if (!(std::abs(s) < 1.0)) throw DomainError("evanescent input angle");
  TransmissionSpectrum out;
  out.theta_ext = theta_ext;
  out.incidence = incidence;
  out.omega = omega_grid.values();
  out.t.resize(omega_grid.count);
  out.r.resize(omega_grid.count);
  FieldMap scratch;
  for (std::size_t i = 0; i < omega_grid.count; ++i) {
    const ResolvedStack resolved = resolve(stack, out.omega[i]);
    solve_fields_into(resolved, out.omega[i], s, incidence, scratch);
    out.t[i] = scratch.t;
    out.r[i] = scratch.r;
  }
  return out;
}

}  // namespace rspdc::optics
