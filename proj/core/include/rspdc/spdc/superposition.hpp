#pragma once

#include <cstddef>
#include <vector>

#include "rspdc/optics/layer_stack.hpp"
#include "rspdc/spdc/amplitude.hpp"

namespace rspdc::spdc {

struct PinholeSpec {
  std::size_t count = 1;       // M
  double delta_omega = 0.0;    // spacing of the copies along w_s = w_i (rad/fs)
  double phase_step = 0.0;     // phase between neighbouring copies (rad)

  void validate() const;
};

/// Phi_M(w_s, w_i) = sum_{n<M} exp(i n phase) phi(w_s + n dw, w_i + n dw).
///
/// Exact index shifts when delta_omega is a multiple of both grid steps,
/// linear interpolation otherwise (zero outside the input grid). The grid
/// is extended downwards so every copy fits. A Paper amplitude is
/// renormalized; a Physical one is returned as the raw coherent sum.
TwoPhotonAmplitude superpose_pinholes(const TwoPhotonAmplitude& tpa, const PinholeSpec& spec);

struct AngularRangeSpec {
  double theta_min = 0.0;   // rad, external
  double theta_max = 0.0;
  std::size_t samples = 32;
  /// Approximate peak frequency at theta_min; 0 means w_p0 / 2.
  double omega_guess = 0.0;
  /// Phase slopes tried around the fitted one (odd count).
  std::size_t slope_candidates = 21;

  void validate() const;
};

struct AngularSuperposition {
  TwoPhotonAmplitude amplitude;
  std::vector<double> theta;       // sampled angles
  std::vector<double> peak_omega;  // tracked peak centre per angle
  double phase_slope = 0.0;        // rad per rad of theta_s
  double first_weight = 0.0;       // lambda_1^2 of the result
};

/// Coherent average over angles of exp(i beta (theta - theta_mid)) phi_theta,
/// beta chosen to maximise the first Schmidt weight. The tracked peak must
/// keep at least half its initial transmittance; otherwise DomainError
/// names the angle where it was lost.
AngularSuperposition superpose_angular_range(const optics::LayerStack& stack,
                                             const PumpConfig& pump, const AngularRangeSpec& spec,
                                             const FrequencyGrid& grid,
                                             Normalization normalization = Normalization::Paper);

}  // namespace rspdc::spdc
