#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "rspdc/optics/layer_stack.hpp"

namespace rspdc::optics {

using cdouble = std::complex<double>;

enum class Incidence { Left, Right };

/// TE plane-wave solution of a stack at one (omega, external angle).
///
/// Regions are indexed 0 (left vacuum), 1..N (layers), N+1 (right vacuum).
/// In region j the field is A+ exp(i kz (z - z_j)) + A- exp(-i kz (z - z_j)),
/// z_j being the region's left edge (the outer interface for the left
/// vacuum). Amplitudes are scaled to a unit incident wave.
struct FieldMap {
  double omega = 0.0;
  double theta_ext = 0.0;
  Incidence incidence = Incidence::Left;
  std::vector<cdouble> forward;
  std::vector<cdouble> backward;
  std::vector<double> kz;         // rad/um
  std::vector<double> thickness;  // um; zero for the two vacuum regions
  cdouble t{0.0, 0.0};
  cdouble r{0.0, 0.0};

  std::size_t layer_count() const { return kz.size() >= 2 ? kz.size() - 2 : 0; }
};

/// Per-layer indices and thicknesses frozen at one frequency.
struct ResolvedStack {
  std::vector<double> index;
  std::vector<double> thickness;
};

/// Evaluates every layer's refractive index at omega.
ResolvedStack resolve(const LayerStack& stack, double omega);

/// Solves the stack for a unit plane wave arriving from the given side.
/// Throws DomainError for an evanescent input (|sin theta| >= 1) or an
/// out-of-band frequency.
FieldMap solve_fields(const LayerStack& stack, double omega, double theta_ext,
                      Incidence incidence = Incidence::Left);

/// Same with the dispersion frozen in `resolved` (used for scaling checks and
/// in hot loops where the indices are already known).
FieldMap solve_fields(const ResolvedStack& resolved, double omega, double theta_ext,
                      Incidence incidence = Incidence::Left);

/// Overwrites `out`, reusing its buffers.
void solve_fields_into(const ResolvedStack& resolved, double omega, double sin_theta,
                       Incidence incidence, FieldMap& out);

/// Complex amplitude transmission only (left incidence); cheaper than a full solve.
cdouble transmission_amplitude(const ResolvedStack& resolved, double omega, double sin_theta);

/// Intensity transmittance |t|^2 for left incidence.
double transmittance(const LayerStack& stack, double omega, double theta_ext);

/// 2x2 matrix mapping (A+, A-) in the left vacuum (at z = 0) to (A+, A-)
/// in the right vacuum (at z = L).
Eigen::Matrix2cd transfer_matrix(const LayerStack& stack, double omega, double theta_ext);

}  // namespace rspdc::optics
