#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "rspdc/spdc/amplitude.hpp"

namespace rspdc::analysis {

struct TemporalOptions {
  /// FFT length per axis; 0 picks the next power of two >= 2 * grid count.
  std::size_t fft_size = 0;
  /// Smallest acceptable time window (fs). The window is 2 pi / d_omega, so
  /// a larger request than the grid supports is a ValidationError.
  double min_window_fs = 0.0;
  /// Multiply by hbar sqrt(w_s0 w_i0) / (4 pi eps0 c B) (SI, B from the
  /// geometry) instead of returning the bare transform.
  bool physical_units = false;
  double transverse_area_um2 = 1.0e6;
};

/// phi(t_s, t_i) = 1/(2 pi) sum dws dwi sqrt(w_s w_i / w_s0 w_i0) phi(w_s, w_i)
///                 exp(-i w_s t_s - i w_i t_i)
/// on t = (m - P/2) dt, dt = 2 pi / (P d_omega). Central frequencies are the
/// |phi|^2-weighted means.
struct TemporalAmplitude {
  UniformAxis ts;
  UniformAxis ti;
  Eigen::MatrixXcd values;  // (m, n) -> (ts.at(m), ti.at(n))
  double omega_s0 = 0.0;
  double omega_i0 = 0.0;
  /// More than 1e-3 of the energy sits in the outer 1 % of either axis.
  bool aliasing = false;
};

TemporalAmplitude temporal_amplitude(const spdc::TwoPhotonAmplitude& tpa,
                                     const TemporalOptions& options = {});

/// Rectangle-rule squared norm, sum |phi(t)|^2 dts dti.
double squared_norm(const TemporalAmplitude& temporal);

/// Frequency-side counterpart of the transform's Parseval identity:
/// sum (w_s w_i / w_s0 w_i0) |phi|^2 dws dwi (rectangle rule).
double weighted_spectral_norm(const spdc::TwoPhotonAmplitude& tpa, double omega_s0,
                              double omega_i0);

enum class Field { Signal, Idler };

struct FluxSeries {
  std::vector<double> t;
  std::vector<double> flux;
};

/// N_m(t_m) = hbar w_m0 integral dt_other |phi|^2, hbar = 1 unless
/// electron_volts (then eV fs).
FluxSeries photon_flux(const TemporalAmplitude& temporal, Field field, bool electron_volts = false);

/// Indices of maxima that stand out: above min_rel_height of the global
/// maximum and separated from every stronger maximum by a dip below
/// dip_ratio times the smaller of the two.
std::vector<std::size_t> resolved_maxima(std::span<const double> values,
                                         double min_rel_height = 0.05, double dip_ratio = 0.8);

/// RMS width of |phi(t)|^2 projected on t_s + t_i.
double sum_time_rms(const TemporalAmplitude& temporal);

}  // namespace rspdc::analysis
