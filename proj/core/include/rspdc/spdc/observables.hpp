#pragma once

#include <span>
#include <vector>

#include "rspdc/spdc/amplitude.hpp"

namespace rspdc::spdc {

/// Mean number of generated pairs, the quadrature of |phi|^2.
/// Requires Physical normalization (throws ValidationError otherwise).
double pair_number(const TwoPhotonAmplitude& tpa);

enum class EnergyUnits {
  Relative,  // omega * integral |phi|^2
  ElectronVolt,  // hbar omega * integral |phi|^2 with hbar in eV fs
};

struct SignalSpectrum {
  std::vector<double> omega;
  std::vector<double> value;
};

/// S_s(w_s) = hbar w_s integral dw_i |phi|^2.
SignalSpectrum signal_spectrum(const TwoPhotonAmplitude& tpa,
                               EnergyUnits units = EnergyUnits::Relative);
/// Same for the idler field.
SignalSpectrum idler_spectrum(const TwoPhotonAmplitude& tpa,
                              EnergyUnits units = EnergyUnits::Relative);

/// FWHM of a sampled single-peaked curve, from interpolated half-maximum
/// crossings around the global maximum. Zero when not bracketed.
double spectrum_fwhm(std::span<const double> omega, std::span<const double> value);

/// Homogeneous LiNbO3-equivalent slab with the stack's nonlinear thickness,
/// perfectly phase matched and free of reflections:
/// phi_ref = prefactor * E_env(w_s + w_i) * sum_l chi2_l d_l.
TwoPhotonAmplitude reference_amplitude(const optics::LayerStack& stack, const PumpConfig& pump,
                                       const FrequencyGrid& grid);

struct RelativeSpectrum {
  std::vector<double> omega;
  std::vector<double> ratio;
  /// Points where the reference fell below the 1e-30 floor (ratio set to 0).
  std::size_t floored = 0;
};

/// S_s / S_s^ref per signal frequency. The reference slab spectrum is
/// integrated analytically over the whole pump bandwidth, so the ratio does
/// not depend on how far the grid extends along w_i. tpa must be Physical.
RelativeSpectrum relative_spectrum(const TwoPhotonAmplitude& tpa, const optics::LayerStack& stack,
                                   const PumpConfig& pump);

/// Relative signal spectrum at a single w_s: the structure's spectrum is
/// integrated over an increasing idler sample set (trapezoid rule), the
/// reference as in relative_spectrum.
double relative_spectrum_at(const AmplitudeModel& model, double omega_s,
                            std::span<const double> idler);

/// Idler samples for relative_spectrum_at around a peak centred at `center`:
/// uniform across +-10 FWHM, then geometrically spaced out to five pump
/// standard deviations on each side so Lorentzian tails integrate well.
std::vector<double> peak_idler_samples(double center, double fwhm, double pump_duration_fs);

}  // namespace rspdc::spdc
