#pragma once

#include <complex>
#include <vector>

#include "rspdc/grid.hpp"
#include "rspdc/optics/layer_stack.hpp"
#include "rspdc/optics/transfer_matrix.hpp"

namespace rspdc::optics {

struct TransmissionSpectrum {
  std::vector<double> omega;  // rad/fs, strictly increasing
  std::vector<cdouble> t;
  std::vector<cdouble> r;
  double theta_ext = 0.0;
  Incidence incidence = Incidence::Left;

  std::size_t size() const { return omega.size(); }
  double T(std::size_t i) const { return std::norm(t[i]); }
  double R(std::size_t i) const { return std::norm(r[i]); }
  std::vector<double> transmittance() const;
};

/// solve_fields evaluated on every grid point (TE).
TransmissionSpectrum transmission_spectrum(const LayerStack& stack, const UniformAxis& omega_grid,
                                           double theta_ext,
                                           Incidence incidence = Incidence::Left);

}  // namespace rspdc::optics
