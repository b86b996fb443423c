#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rspdc/grid.hpp"
#include "rspdc/optics/layer_stack.hpp"
#include "rspdc/optics/peaks.hpp"

namespace rspdc::spdc {

using cdouble = std::complex<double>;

struct PumpConfig {
  double omega_p0 = 0.0;             // rad/fs
  double duration_fwhm_fs = 250.0;   // intensity FWHM of a Gaussian pulse
  double amplitude_v_per_um = 1.0;   // peak field
  double beam_diameter_um = std::numeric_limits<double>::infinity();  // 1/e^2 intensity

  void validate() const;
  /// Spectral field envelope exp(-(w - w0)^2 tau^2 / (8 ln 2)).
  double envelope(double omega) const;
};

struct EmissionGeometry {
  double theta_s = 0.0;                // external signal angle, rad
  double psi = 0.0;                    // common azimuth, rad
  double transverse_area_um2 = 1.0e6;  // B

  void validate() const;
  /// sin(theta_i) from transverse matching: w_i sin(theta_i) = -w_s sin(theta_s).
  double idler_sin(double omega_s, double omega_i) const;
};

struct FrequencyGrid {
  UniformAxis signal;
  UniformAxis idler;

  /// Both axes strictly increasing with at least `min_count` samples.
  void validate(std::size_t min_count = 64) const;
  bool square() const { return signal.matches(idler); }

  /// Shared axis center +- half_width with n samples on both sides.
  static FrequencyGrid square_around(double center, double half_width, std::size_t n);
  /// Square grid holding both peaks with `margin_fwhm` of the wider width on
  /// the outside and at least `samples_per_fwhm` points across the narrower
  /// one. Pass the same peak twice for a degenerate state.
  static FrequencyGrid covering(const optics::Peak& a, const optics::Peak& b,
                                double margin_fwhm = 8.0, double samples_per_fwhm = 5.0,
                                std::size_t min_count = 256);
};

enum class Normalization {
  Paper,     // 4 * sum |phi|^2 dws dwi / w_p0^2 = 1
  Physical,  // sum |phi|^2 dws dwi is the mean pair number
};

std::string to_string(Normalization n);
Normalization normalization_from_string(const std::string& s);

/// Joint spectral amplitude phi(w_s, w_i) on a rectangular grid.
/// values(k, l) belongs to (signal.at(k), idler.at(l)).
struct TwoPhotonAmplitude {
  FrequencyGrid grid;
  Eigen::MatrixXcd values;
  Normalization normalization = Normalization::Paper;
  double omega_p0 = 0.0;
  /// Set when the narrowest spectral feature spans fewer than 5 grid steps.
  bool coarse_grid = false;
};

/// Trapezoidal integral of |phi|^2 over the grid.
double squared_norm(const TwoPhotonAmplitude& tpa);
/// 4 * squared_norm / w_p0^2.
double paper_norm(const TwoPhotonAmplitude& tpa);
/// Rescales to the Paper normalization (tag updated).
void normalize_paper(TwoPhotonAmplitude& tpa);
/// Throws ValidationError when the declared normalization does not hold.
void check_normalization(const TwoPhotonAmplitude& tpa, double tol = 1e-8);

/// First-order SPDC amplitude of a layered stack (scalar TE model, both
/// photons leaving forwards).
///
/// For each (w_s, w_i) the pump is solved at normal incidence and frequency
/// w_s + w_i; signal and idler use the stack solution for a unit wave
/// arriving from the right (the time-reversed outgoing mode), the idler angle
/// following transverse matching. Per layer, the eight products of
/// forward/backward pump, signal and idler amplitudes are integrated
/// analytically over the layer thickness. Points where the idler would be
/// evanescent are zero.
class AmplitudeModel {
 public:
  AmplitudeModel(optics::LayerStack stack, PumpConfig pump, EmissionGeometry geometry);

  const optics::LayerStack& stack() const { return stack_; }
  const PumpConfig& pump() const { return pump_; }
  const EmissionGeometry& geometry() const { return geometry_; }

  /// Sum over layers of chi2 * overlap, without the pump envelope (pm/V um).
  cdouble overlap(double omega_s, double omega_i) const;
  /// phi in Physical units (fs).
  cdouble amplitude(double omega_s, double omega_i) const;
  /// phi on the tensor grid signal x idler, Physical units.
  Eigen::MatrixXcd evaluate(std::span<const double> signal, std::span<const double> idler) const;
  Eigen::MatrixXcd evaluate(const FrequencyGrid& grid) const;

  /// Converts chi2 * E_p * overlap into fs: E_p chi2 / (2 c).
  double physical_prefactor() const;

 private:
  optics::LayerStack stack_;
  PumpConfig pump_;
  EmissionGeometry geometry_;
  std::vector<double> chi2_;
};

TwoPhotonAmplitude two_photon_amplitude(const optics::LayerStack& stack, const PumpConfig& pump,
                                        const EmissionGeometry& geometry,
                                        const FrequencyGrid& grid,
                                        Normalization normalization = Normalization::Paper);

struct SpectralWindow {
  double lo = 0.0;  // rad/fs
  double hi = 0.0;
};

/// Windows of +- half_width_fwhm peak widths around each peak centre.
std::vector<SpectralWindow> peak_windows(std::span<const optics::Peak> peaks,
                                         double half_width_fwhm = 8.0);

/// Both photons pass the same band-pass filter, the union of `windows`:
/// phi(w_s, w_i) is kept where w_s and w_i each lie in some window and set
/// to zero elsewhere. Swap symmetry on a square grid is preserved. A Paper
/// amplitude is renormalized; an all-zero result is a NumericalError.
TwoPhotonAmplitude bandpass_filter(const TwoPhotonAmplitude& tpa,
                                   std::span<const SpectralWindow> windows);
/// Separate filters: the signal photon must pass `signal_windows` and the
/// idler `idler_windows` (labels the photons by the peak they occupy).
TwoPhotonAmplitude bandpass_filter(const TwoPhotonAmplitude& tpa,
                                   std::span<const SpectralWindow> signal_windows,
                                   std::span<const SpectralWindow> idler_windows);

/// Longitudinal overlap of one layer, integral_0^L exp(i dk z) dz.
cdouble layer_overlap(double delta_k, double length);

/// True if `values` has fewer than min_samples points above half maximum
/// along either marginal.
bool grid_too_coarse(const Eigen::MatrixXcd& values, std::size_t min_samples = 5);

}  // namespace rspdc::spdc
