#pragma once

#include <cstddef>

#include "rspdc/optics/layer_stack.hpp"
#include "rspdc/spdc/amplitude.hpp"

namespace rspdc::spdc {

struct CorrelationAreaOptions {
  std::size_t omega_samples = 33;   // per field, across the transmission peak
  std::size_t angle_samples = 61;   // per declination axis
  double omega_window_fwhm = 4.0;   // half-width of the frequency window
  double search_window = 0.02;      // relative band searched for the signal peak
};

struct CorrelationArea {
  double sigma_theta_rad = 0.0;  // RMS radial declination of the idler
  double sigma_psi_rad = 0.0;    // RMS azimuthal declination of the idler
  double peak_omega = 0.0;       // signal peak used (rad/fs)
  double peak_fwhm = 0.0;        // its width (rad/fs)
  double beam_diameter_um = 0.0; // diameter actually used
};

/// Spread of idler emission directions for a fixed signal direction.
///
/// Idler directions (theta_s + d_theta, pi + d_psi) are weighted by
/// E_env^2(w_s + w_i) T(w_s, theta_s) T(w_i, theta_i) |G(q)|^2, summed over
/// signal and idler frequencies across the transmission peak nearest
/// w_p0 / 2. q is the transverse wavevector mismatch the pump must supply
/// and |G(q)|^2 = exp(-q^2 w^2 / 2) with w = a / 2. A plane-wave pump
/// (infinite a) uses the diameter of a disc of area B.
///
/// Throws DomainError for theta_s = 0 (azimuth undefined) or when no peak
/// is found near w_p0 / 2.
CorrelationArea correlation_area(const optics::LayerStack& stack, const PumpConfig& pump,
                                 const EmissionGeometry& geometry,
                                 const CorrelationAreaOptions& options = {});

}  // namespace rspdc::spdc
