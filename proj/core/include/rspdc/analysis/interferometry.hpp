#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "rspdc/spdc/amplitude.hpp"

namespace rspdc::analysis {

struct HomPattern {
  std::vector<double> tau;   // fs
  std::vector<double> rate;  // R_n^HOM in [0, 2]
};

/// R_n^HOM(tau) = 1 - Re[sum w_s w_i phi(w_s, w_i) phi*(w_i, w_s)
///                 exp(i (w_i - w_s) tau)] / R(0, 0).
/// The swap needs a shared axis: a non-square grid is a ValidationError.
HomPattern hom_rate(const spdc::TwoPhotonAmplitude& tpa, std::span<const double> tau);

struct HomOscillation {
  double delta_omega = 0.0;      // rad/fs
  double period_fs = 0.0;        // 2 pi / delta_omega
  double relative_weight = 0.0;  // |g_d| + |g_-d| over R(0, 0)
};

/// Dominant oscillation of R_n^HOM: the strongest local maximum at d > 0 of
/// the diagonal sums g_d that make up the interferogram (its spectrum in
/// w_i - w_s), refined by a parabola. Square grid required.
HomOscillation hom_oscillation(const spdc::TwoPhotonAmplitude& tpa);

struct FransonPattern {
  std::vector<double> tau_s;
  std::vector<double> tau_i;
  Eigen::MatrixXd rate;  // (a, b) -> (tau_s[a], tau_i[b]), R_n^F in [0, 1]
};

/// R(tau_s, tau_i) = sum w_s w_i |phi|^2 exp(i w_s tau_s + i w_i tau_i).
std::complex<double> franson_correlation(const spdc::TwoPhotonAmplitude& tpa, double tau_s,
                                         double tau_i);

/// R_n^F = 1/4 + Re{2 R(ts,0) + 2 R(0,ti) + R(ts,ti) + R(ts,-ti)} / (8 R(0,0)).
FransonPattern franson_rate(const spdc::TwoPhotonAmplitude& tpa, std::span<const double> tau_s,
                            std::span<const double> tau_i);

struct FringeOrientation {
  double wavevector_deg = 0.0;  // direction of the dominant spatial frequency, [0, 180)
  double fringe_deg = 0.0;      // direction of the fringe lines, [0, 180)
  double magnitude = 0.0;       // rad/fs
};

/// Dominant non-zero 2D spatial frequency of a pattern sampled on uniform
/// (tau_s, tau_i) steps, after mean removal and a Hann taper.
FringeOrientation fringe_orientation(const Eigen::MatrixXd& pattern, double step_s,
                                     double step_i);

}  // namespace rspdc::analysis
