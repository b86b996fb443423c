#include "rspdc/spdc/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rspdc/errors.hpp"
#include "rspdc/units.hpp"

namespace rspdc::spdc {

namespace {

void require_physical(const TwoPhotonAmplitude& tpa, const char* what) {
  if (tpa.normalization != Normalization::Physical) {
    throw ValidationError(std::string(what) + " needs a \"physical\" amplitude");
  }
}

SignalSpectrum marginal(const TwoPhotonAmplitude& tpa, bool signal, EnergyUnits units) {
  const UniformAxis& own = signal ? tpa.grid.signal : tpa.grid.idler;
  const auto other_w = trapezoid_weights(signal ? tpa.grid.idler : tpa.grid.signal);
  const double hbar = units == EnergyUnits::ElectronVolt ? kHbarEvFs : 1.0;
  SignalSpectrum out;
  out.omega = own.values();
  out.value.assign(own.count, 0.0);
  for (std::size_t k = 0; k < own.count; ++k) {
    double acc = 0.0;
    for (std::size_t l = 0; l < other_w.size(); ++l) {
      const auto a = signal ? tpa.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l))
                            : tpa.values(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(k));
      acc += std::norm(a) * other_w[l];
    }
    out.value[k] = hbar * out.omega[k] * acc;
  }
  return out;
}

}  // namespace

double pair_number(const TwoPhotonAmplitude& tpa) {
  require_physical(tpa, "pair_number");
  return squared_norm(tpa);
}

SignalSpectrum signal_spectrum(const TwoPhotonAmplitude& tpa, EnergyUnits units) {
  return marginal(tpa, true, units);
}

SignalSpectrum idler_spectrum(const TwoPhotonAmplitude& tpa, EnergyUnits units) {
  return marginal(tpa, false, units);
}

double spectrum_fwhm(std::span<const double> omega, std::span<const double> value) {
  if (value.size() < 3 || omega.size() != value.size()) return 0.0;
  const auto top = static_cast<std::size_t>(
      std::max_element(value.begin(), value.end()) - value.begin());
  const double half = 0.5 * value[top];
  if (!(half > 0.0)) return 0.0;
  std::size_t a = top;
  while (a > 0 && value[a - 1] >= half) --a;
  std::size_t b = top;
  while (b + 1 < value.size() && value[b + 1] >= half) ++b;
  if (a == 0 || b + 1 == value.size()) return 0.0;
  auto cross = [&](std::size_t lo, std::size_t hi) {
    const double f = (half - value[lo]) / (value[hi] - value[lo]);
    return omega[lo] + f * (omega[hi] - omega[lo]);
  };
  return cross(b + 1, b) - cross(a - 1, a);
}

TwoPhotonAmplitude reference_amplitude(const optics::LayerStack& stack, const PumpConfig& pump,
                                       const FrequencyGrid& grid) {
  pump.validate();
  double chi2_length = 0.0;
  for (std::size_t l = 0; l < stack.size(); ++l) {
    chi2_length += stack.material_of(l).chi2_pm_per_v * stack.layers()[l].thickness_um;
  }
  const double pref = 1e-6 * pump.amplitude_v_per_um / (2.0 * kSpeedOfLight) * chi2_length;
  TwoPhotonAmplitude out;
  out.grid = grid;
  out.omega_p0 = pump.omega_p0;
  out.normalization = Normalization::Physical;
  out.values.resize(static_cast<Eigen::Index>(grid.signal.count),
                    static_cast<Eigen::Index>(grid.idler.count));
  for (std::size_t k = 0; k < grid.signal.count; ++k) {
    for (std::size_t l = 0; l < grid.idler.count; ++l) {
      out.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) =
          pref * pump.envelope(grid.signal.at(k) + grid.idler.at(l));
    }
  }
  return out;
}

namespace {

// Reference signal spectrum per unit hbar w_s: the slab amplitude squared
// integrated over every idler frequency the pump envelope allows.
double reference_line(const optics::LayerStack& stack, const PumpConfig& pump) {
  double chi2_length = 0.0;
  for (std::size_t l = 0; l < stack.size(); ++l) {
    chi2_length += stack.material_of(l).chi2_pm_per_v * stack.layers()[l].thickness_um;
  }
  const double amp = 1e-6 * pump.amplitude_v_per_um / (2.0 * kSpeedOfLight) * chi2_length;
  return amp * amp * 2.0 * std::sqrt(std::numbers::pi * std::numbers::ln2) / pump.duration_fwhm_fs;
}

}  // namespace

RelativeSpectrum relative_spectrum(const TwoPhotonAmplitude& tpa, const optics::LayerStack& stack,
                                   const PumpConfig& pump) {
  require_physical(tpa, "relative_spectrum");
  pump.validate();
  const double den = reference_line(stack, pump);
  const auto s = signal_spectrum(tpa);
  RelativeSpectrum out;
  out.omega = s.omega;
  out.ratio.resize(s.value.size());
  for (std::size_t k = 0; k < s.value.size(); ++k) {
    if (den < 1e-30) {
      out.ratio[k] = 0.0;
      ++out.floored;
    } else {
      out.ratio[k] = s.value[k] / (s.omega[k] * den);
    }
  }
  return out;
}

double relative_spectrum_at(const AmplitudeModel& model, double omega_s,
                            std::span<const double> idler) {
  if (idler.size() < 2) throw ValidationError("relative_spectrum_at needs >= 2 idler samples");
  const double ws[1] = {omega_s};
  const Eigen::MatrixXcd line = model.evaluate(ws, idler);
  double num = 0.0;
  for (std::size_t l = 0; l + 1 < idler.size(); ++l) {
    const double h = 0.5 * (idler[l + 1] - idler[l]);
    num += h * (std::norm(line(0, static_cast<Eigen::Index>(l))) +
                std::norm(line(0, static_cast<Eigen::Index>(l + 1))));
  }
  const double den = reference_line(model.stack(), model.pump());
  if (den < 1e-30) return 0.0;
  return num / den;
}

std::vector<double> peak_idler_samples(double center, double fwhm, double pump_duration_fs) {
  if (!(fwhm > 0.0) || !(pump_duration_fs > 0.0)) {
    throw ValidationError("peak_idler_samples needs positive widths");
  }
  const double near = 10.0 * fwhm;
  const double far = std::max(near, 5.0 * std::sqrt(2.0 * std::numbers::ln2) / pump_duration_fs);
  std::vector<double> offsets;
  for (int q = -100; q <= 100; ++q) offsets.push_back(near * q / 100.0);
  for (double d = near * 1.1; d < far; d *= 1.1) {
    offsets.push_back(d);
    offsets.push_back(-d);
  }
  if (far > near) {
    offsets.push_back(far);
    offsets.push_back(-far);
  }
  std::sort(offsets.begin(), offsets.end());
  std::vector<double> out;
  out.reserve(offsets.size());
  for (double d : offsets) out.push_back(center + d);
  return out;
}

}  // namespace rspdc::spdc
