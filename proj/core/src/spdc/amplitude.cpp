#include "rspdc/spdc/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rspdc/errors.hpp"
#include "rspdc/optics/transfer_matrix.hpp"
#include "rspdc/units.hpp"

namespace rspdc::spdc {

namespace {

using optics::FieldMap;
using optics::Incidence;
using optics::ResolvedStack;

// Amplitudes of one field inside the nonlinear layers only.
struct LayerField {
  cdouble fwd;
  cdouble bwd;
  cdouble phase;  // exp(i kz d)
  double kz;
};

struct ModeSet {
  std::vector<LayerField> layers;
  bool valid = true;
};

class ModeSolver {
 public:
  ModeSolver(const optics::LayerStack& stack, std::vector<std::size_t> nonlinear)
      : stack_(stack), nonlinear_(std::move(nonlinear)) {}

  void solve(double omega, double sin_theta, Incidence incidence, ModeSet& out) {
    if (!(std::abs(sin_theta) < 1.0)) {
      out.valid = false;
      out.layers.clear();
      return;
    }
    if (omega != cached_omega_) {
      resolved_ = optics::resolve(stack_, omega);
      cached_omega_ = omega;
    }
    optics::solve_fields_into(resolved_, omega, sin_theta, incidence, map_);
    out.valid = true;
    out.layers.resize(nonlinear_.size());
    for (std::size_t q = 0; q < nonlinear_.size(); ++q) {
      const std::size_t j = nonlinear_[q] + 1;
      const double kz = map_.kz[j];
      const double phi = kz * map_.thickness[j];
      out.layers[q] = {map_.forward[j], map_.backward[j], {std::cos(phi), std::sin(phi)}, kz};
    }
  }

 private:
  const optics::LayerStack& stack_;
  std::vector<std::size_t> nonlinear_;
  ResolvedStack resolved_;
  double cached_omega_ = -1.0;
  FieldMap map_;
};

inline cdouble overlap_from_phase(double dk, double d, cdouble e) {
  const double x = dk * d;
  if (std::abs(x) < 1e-3) {
    const double x2 = x * x;
    return d * cdouble(1.0 - x2 / 6.0 + x2 * x2 / 120.0, x / 2.0 - x2 * x / 24.0);
  }
  // (e - 1) / (i dk)
  return cdouble(e.imag() / dk, (1.0 - e.real()) / dk);
}

cdouble layer_sum(const ModeSet& p, const ModeSet& s, const ModeSet& i,
                  const std::vector<double>& chi2, const std::vector<double>& thickness) {
  cdouble total{0.0, 0.0};
  for (std::size_t q = 0; q < chi2.size(); ++q) {
    const LayerField& lp = p.layers[q];
    const LayerField& ls = s.layers[q];
    const LayerField& li = i.layers[q];
    const double d = thickness[q];
    const cdouble ap[2] = {lp.fwd, lp.bwd};
    const cdouble ep[2] = {lp.phase, std::conj(lp.phase)};
    const double kp[2] = {lp.kz, -lp.kz};
    const cdouble as[2] = {ls.fwd, ls.bwd};
    const cdouble es[2] = {ls.phase, std::conj(ls.phase)};
    const double ks[2] = {ls.kz, -ls.kz};
    const cdouble ai[2] = {li.fwd, li.bwd};
    const cdouble ei[2] = {li.phase, std::conj(li.phase)};
    const double ki[2] = {li.kz, -li.kz};
    cdouble acc{0.0, 0.0};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const cdouble amp_ps = ap[a] * as[b];
        const cdouble e_ps = ep[a] * es[b];
        const double k_ps = kp[a] + ks[b];
        for (int c = 0; c < 2; ++c) {
          const double dk = k_ps + ki[c];
          acc += amp_ps * ai[c] * overlap_from_phase(dk, d, e_ps * ei[c]);
        }
      }
    }
    total += chi2[q] * acc;
  }
  return total;
}

std::size_t above_half(const std::vector<double>& v) {
  const double peak = *std::max_element(v.begin(), v.end());
  if (!(peak > 0.0)) return v.size();
  return static_cast<std::size_t>(
      std::count_if(v.begin(), v.end(), [&](double x) { return x >= 0.5 * peak; }));
}

}  // namespace

void PumpConfig::validate() const {
  if (!(omega_p0 > 0.0)) throw ValidationError("pump omega_p0 must be positive");
  if (!(duration_fwhm_fs > 0.0)) throw ValidationError("pump duration_fwhm_fs must be positive");
  if (!std::isfinite(amplitude_v_per_um)) throw ValidationError("pump amplitude must be finite");
  if (!(beam_diameter_um > 0.0)) throw DomainError("pump beam diameter must be positive");
}

double PumpConfig::envelope(double omega) const {
  const double d = omega - omega_p0;
  return std::exp(-d * d * duration_fwhm_fs * duration_fwhm_fs / (8.0 * std::numbers::ln2));
}

void EmissionGeometry::validate() const {
  if (!(std::abs(std::sin(theta_s)) < 1.0) || !std::isfinite(theta_s)) {
    throw DomainError("signal angle must lie strictly inside (-90, 90) deg");
  }
  if (!std::isfinite(psi)) throw ValidationError("azimuth must be finite");
  if (!(transverse_area_um2 > 0.0)) throw ValidationError("transverse area must be positive");
}

double EmissionGeometry::idler_sin(double omega_s, double omega_i) const {
  return -(omega_s / omega_i) * std::sin(theta_s);
}

void FrequencyGrid::validate(std::size_t min_count) const {
  signal.validate(min_count);
  idler.validate(min_count);
  if (!(signal.start > 0.0) || !(idler.start > 0.0)) {
    throw ValidationError("frequency grids must be positive");
  }
}

FrequencyGrid FrequencyGrid::square_around(double center, double half_width, std::size_t n) {
  const UniformAxis axis = UniformAxis::linspace(center - half_width, center + half_width, n);
  return {axis, axis};
}

FrequencyGrid FrequencyGrid::covering(const optics::Peak& a, const optics::Peak& b,
                                      double margin_fwhm, double samples_per_fwhm,
                                      std::size_t min_count) {
  if (!(a.fwhm_omega > 0.0) || !(b.fwhm_omega > 0.0)) {
    throw ValidationError("covering grid needs positive peak widths");
  }
  if (!(margin_fwhm > 0.0) || !(samples_per_fwhm > 0.0)) {
    throw ValidationError("covering grid needs a positive margin and sample density");
  }
  const double center = 0.5 * (a.omega_c + b.omega_c);
  const double half = 0.5 * std::abs(a.omega_c - b.omega_c) +
                      margin_fwhm * std::max(a.fwhm_omega, b.fwhm_omega);
  const double step = std::min(a.fwhm_omega, b.fwhm_omega) / samples_per_fwhm;
  const auto n = std::max<std::size_t>(min_count, static_cast<std::size_t>(std::ceil(2.0 * half / step)) + 1);
  return square_around(center, half, n);
}

std::string to_string(Normalization n) {
  return n == Normalization::Paper ? "paper" : "physical";
}

Normalization normalization_from_string(const std::string& s) {
  if (s == "paper") return Normalization::Paper;
  if (s == "physical") return Normalization::Physical;
  throw ValidationError("normalization must be \"paper\" or \"physical\", got \"" + s + "\"");
}

double squared_norm(const TwoPhotonAmplitude& tpa) {
  const auto ws = trapezoid_weights(tpa.grid.signal);
  const auto wi = trapezoid_weights(tpa.grid.idler);
  double total = 0.0;
  for (Eigen::Index l = 0; l < tpa.values.cols(); ++l) {
    double col = 0.0;
    for (Eigen::Index k = 0; k < tpa.values.rows(); ++k) {
      col += std::norm(tpa.values(k, l)) * ws[static_cast<std::size_t>(k)];
    }
    total += col * wi[static_cast<std::size_t>(l)];
  }
  return total;
}

double paper_norm(const TwoPhotonAmplitude& tpa) {
  return 4.0 * squared_norm(tpa) / (tpa.omega_p0 * tpa.omega_p0);
}

void normalize_paper(TwoPhotonAmplitude& tpa) {
  const double n = paper_norm(tpa);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw NumericalError("cannot normalize a vanishing two-photon amplitude");
  }
  tpa.values /= std::sqrt(n);
  tpa.normalization = Normalization::Paper;
}

void check_normalization(const TwoPhotonAmplitude& tpa, double tol) {
  if (!tpa.values.allFinite()) throw ValidationError("two-photon amplitude has non-finite values");
  if (tpa.normalization == Normalization::Paper && std::abs(paper_norm(tpa) - 1.0) > tol) {
    std::ostringstream msg;
    msg << "amplitude tagged \"paper\" has norm " << paper_norm(tpa);
    throw ValidationError(msg.str());
  }
}

cdouble layer_overlap(double delta_k, double length) {
  const double phi = delta_k * length;
  return overlap_from_phase(delta_k, length, {std::cos(phi), std::sin(phi)});
}

AmplitudeModel::AmplitudeModel(optics::LayerStack stack, PumpConfig pump, EmissionGeometry geometry)
    : stack_(std::move(stack)), pump_(pump), geometry_(geometry) {
  pump_.validate();
  geometry_.validate();
}

double AmplitudeModel::physical_prefactor() const {
  // chi2 in pm/V -> um/V
  return 1e-6 * pump_.amplitude_v_per_um / (2.0 * kSpeedOfLight);
}

cdouble AmplitudeModel::overlap(double omega_s, double omega_i) const {
  const double ws[1] = {omega_s};
  const double wi[1] = {omega_i};
  AmplitudeModel copy = *this;
  copy.pump_.omega_p0 = omega_s + omega_i;  // envelope = 1
  return copy.evaluate(ws, wi)(0, 0) / physical_prefactor();
}

cdouble AmplitudeModel::amplitude(double omega_s, double omega_i) const {
  const double ws[1] = {omega_s};
  const double wi[1] = {omega_i};
  return evaluate(ws, wi)(0, 0);
}

Eigen::MatrixXcd AmplitudeModel::evaluate(std::span<const double> signal,
                                          std::span<const double> idler) const {
  const std::size_t ns = signal.size();
  const std::size_t ni = idler.size();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(ns),
                                                static_cast<Eigen::Index>(ni));
  std::vector<std::size_t> nonlinear;
  std::vector<double> chi2;
  std::vector<double> thickness;
  for (std::size_t l = 0; l < stack_.size(); ++l) {
    const double c = stack_.material_of(l).chi2_pm_per_v;
    if (c != 0.0) {
      nonlinear.push_back(l);
      chi2.push_back(c);
      thickness.push_back(stack_.layers()[l].thickness_um);
    }
  }
  if (nonlinear.empty() || ns == 0 || ni == 0) return out;

  // Band checks up front so a bad grid fails before any work.
  for (double w : signal) (void)optics::resolve(stack_, w);
  for (double w : idler) (void)optics::resolve(stack_, w);

  const double sin_s = std::sin(geometry_.theta_s);
  const bool collinear = sin_s == 0.0;
  ModeSolver pump_solver(stack_, nonlinear);
  ModeSolver signal_solver(stack_, nonlinear);
  ModeSolver idler_solver(stack_, nonlinear);

  std::vector<ModeSet> sig(ns);
  for (std::size_t k = 0; k < ns; ++k) {
    signal_solver.solve(signal[k], sin_s, Incidence::Right, sig[k]);
  }
  std::vector<ModeSet> idl;
  if (collinear) {
    idl.resize(ni);
    for (std::size_t l = 0; l < ni; ++l) idler_solver.solve(idler[l], 0.0, Incidence::Right, idl[l]);
  }

  // On equal-step uniform axes the pump frequency depends only on k + l.
  bool indexed_pump = ns > 1 && ni > 1;
  double step = 0.0;
  if (indexed_pump) {
    step = signal[1] - signal[0];
    auto uniform = [&](std::span<const double> v) {
      for (std::size_t q = 1; q < v.size(); ++q) {
        if (std::abs((v[q] - v[0]) - static_cast<double>(q) * step) > 1e-12 * std::abs(v[q])) {
          return false;
        }
      }
      return true;
    };
    indexed_pump = step > 0.0 && uniform(signal) && uniform(idler);
  }
  std::vector<ModeSet> pump_cache;
  std::vector<char> pump_ready;
  if (indexed_pump) {
    pump_cache.resize(ns + ni - 1);
    pump_ready.assign(ns + ni - 1, 0);
  }

  const double pref = physical_prefactor();
  ModeSet pump_mode;
  ModeSet idler_mode;
  for (std::size_t k = 0; k < ns; ++k) {
    for (std::size_t l = 0; l < ni; ++l) {
      const double wp = indexed_pump
                            ? signal[0] + idler[0] + static_cast<double>(k + l) * step
                            : signal[k] + idler[l];
      const double env = pump_.envelope(wp);
      if (env < 1e-300) continue;
      const ModeSet* p = &pump_mode;
      if (indexed_pump) {
        if (!pump_ready[k + l]) {
          pump_solver.solve(wp, 0.0, Incidence::Left, pump_cache[k + l]);
          pump_ready[k + l] = 1;
        }
        p = &pump_cache[k + l];
      } else {
        pump_solver.solve(wp, 0.0, Incidence::Left, pump_mode);
      }
      const ModeSet* i = nullptr;
      if (collinear) {
        i = &idl[l];
      } else {
        idler_solver.solve(idler[l], geometry_.idler_sin(signal[k], idler[l]), Incidence::Right,
                           idler_mode);
        i = &idler_mode;
      }
      if (!i->valid || !sig[k].valid) continue;
      out(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) =
          pref * env * layer_sum(*p, sig[k], *i, chi2, thickness);
    }
  }
  return out;
}

Eigen::MatrixXcd AmplitudeModel::evaluate(const FrequencyGrid& grid) const {
  const auto s = grid.signal.values();
  const auto i = grid.idler.values();
  return evaluate(s, i);
}

TwoPhotonAmplitude two_photon_amplitude(const optics::LayerStack& stack, const PumpConfig& pump,
                                        const EmissionGeometry& geometry,
                                        const FrequencyGrid& grid, Normalization normalization) {
  grid.validate(64);
  pump.validate();
  const double center_sum = 0.5 * (grid.signal.start + grid.signal.back()) +
                            0.5 * (grid.idler.start + grid.idler.back());
  if (std::abs(center_sum - pump.omega_p0) > 0.5 * (grid.signal.step + grid.idler.step)) {
    std::ostringstream msg;
    msg << "pump omega_p0 = " << pump.omega_p0
        << " rad/fs differs from the sum of the grid centers (" << center_sum << ")";
    throw ValidationError(msg.str());
  }
  AmplitudeModel model(stack, pump, geometry);
  TwoPhotonAmplitude out;
  out.grid = grid;
  out.omega_p0 = pump.omega_p0;
  out.values = model.evaluate(grid);
  out.normalization = Normalization::Physical;
  if (!out.values.allFinite()) throw NumericalError("two-photon amplitude is not finite");
  out.coarse_grid = grid_too_coarse(out.values);
  if (normalization == Normalization::Paper) {
    if (squared_norm(out) > 0.0) {
      normalize_paper(out);
    } else {
      out.normalization = Normalization::Paper;
    }
  }
  return out;
}

std::vector<SpectralWindow> peak_windows(std::span<const optics::Peak> peaks,
                                         double half_width_fwhm) {
  if (!(half_width_fwhm > 0.0)) throw ValidationError("peak window half-width must be positive");
  std::vector<SpectralWindow> out;
  for (const auto& p : peaks) {
    if (!(p.fwhm_omega > 0.0)) throw ValidationError("peak window needs a positive FWHM");
    out.push_back({p.omega_c - half_width_fwhm * p.fwhm_omega, p.omega_c + half_width_fwhm * p.fwhm_omega});
  }
  return out;
}

TwoPhotonAmplitude bandpass_filter(const TwoPhotonAmplitude& tpa,
                                   std::span<const SpectralWindow> windows) {
  return bandpass_filter(tpa, windows, windows);
}

TwoPhotonAmplitude bandpass_filter(const TwoPhotonAmplitude& tpa,
                                   std::span<const SpectralWindow> signal_windows,
                                   std::span<const SpectralWindow> idler_windows) {
  if (signal_windows.empty() || idler_windows.empty()) {
    throw ValidationError("bandpass_filter needs at least one window per photon");
  }
  for (auto set : {signal_windows, idler_windows}) {
    for (const auto& w : set) {
      if (!(w.hi > w.lo)) throw ValidationError("bandpass window must satisfy lo < hi");
    }
  }
  auto pass = [](std::span<const SpectralWindow> set, double omega) {
    return std::any_of(set.begin(), set.end(),
                       [&](const SpectralWindow& w) { return omega >= w.lo && omega <= w.hi; });
  };
  TwoPhotonAmplitude out = tpa;
  for (std::size_t k = 0; k < tpa.grid.signal.count; ++k) {
    const bool ks = pass(signal_windows, tpa.grid.signal.at(k));
    for (std::size_t l = 0; l < tpa.grid.idler.count; ++l) {
      if (!ks || !pass(idler_windows, tpa.grid.idler.at(l))) {
        out.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = 0.0;
      }
    }
  }
  if (!(out.values.cwiseAbs2().maxCoeff() > 0.0)) {
    throw NumericalError("band-pass filter removed the whole amplitude");
  }
  if (out.normalization == Normalization::Paper) normalize_paper(out);
  return out;
}

bool grid_too_coarse(const Eigen::MatrixXcd& values, std::size_t min_samples) {
  if (values.size() == 0) return false;
  const Eigen::MatrixXd p = values.cwiseAbs2();
  std::vector<double> ms(static_cast<std::size_t>(p.rows()));
  std::vector<double> mi(static_cast<std::size_t>(p.cols()));
  for (Eigen::Index k = 0; k < p.rows(); ++k) ms[static_cast<std::size_t>(k)] = p.row(k).sum();
  for (Eigen::Index l = 0; l < p.cols(); ++l) mi[static_cast<std::size_t>(l)] = p.col(l).sum();
  return above_half(ms) < min_samples || above_half(mi) < min_samples;
}

}  // namespace rspdc::spdc
