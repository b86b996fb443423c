#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rspdc/optics/layer_stack.hpp"
#include "rspdc/optics/spectrum.hpp"

namespace rspdc::optics {

struct Peak {
  double omega_c = 0.0;     // rad/fs
  double fwhm_omega = 0.0;  // rad/fs
  double fwhm_nm = 0.0;     // wavelength FWHM
  double t_max = 0.0;       // peak intensity transmittance
};

struct PeakList {
  std::vector<Peak> peaks;
  /// Local maxima above the floor whose half-maximum crossings could not be
  /// bracketed (grid edge, or a taller neighbour reached first).
  std::size_t dropped = 0;
};

/// Local maxima of T above floor_fraction * max(T). FWHM from linearly
/// interpolated half-maximum crossings. The grid must resolve each peak with
/// a handful of samples; scan_peaks takes care of that for real stacks.
PeakList find_peaks(std::span<const double> omega, std::span<const double> transmittance,
                    double floor_fraction = 0.01);
PeakList find_peaks(const TransmissionSpectrum& spectrum, double floor_fraction = 0.01);

struct ScanOptions {
  /// Coarse samples per mean mode spacing (pi c / optical length).
  double coarse_steps_per_mode = 32.0;
  /// Minimum samples across each FWHM on the refined grid.
  std::size_t samples_per_fwhm = 15;
  /// Half-width of the refined window, in FWHM.
  double window_fwhm = 3.0;
  double floor_fraction = 0.01;
};

/// Adaptive transmission-peak search of a stack in [omega_min, omega_max].
///
/// A coarse scan locates candidate maxima; each one is polished by a
/// golden-section search, its half-maximum points are bracketed by
/// bisection, and a local uniform grid with samples_per_fwhm points per FWHM
/// is handed to find_peaks for the reported width.
PeakList scan_peaks(const LayerStack& stack, double omega_min, double omega_max,
                    double theta_ext, const ScanOptions& options = {});

}  // namespace rspdc::optics
