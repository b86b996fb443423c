#include "rspdc/analysis/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <fftw3.h>

#include "fft_lock.hpp"

#include "rspdc/errors.hpp"
#include "rspdc/units.hpp"

namespace rspdc::analysis {

namespace {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// |phi|^2-weighted mean frequency along one axis.
double mean_frequency(const spdc::TwoPhotonAmplitude& tpa, bool signal) {
  const Eigen::MatrixXd p = tpa.values.cwiseAbs2();
  const UniformAxis& axis = signal ? tpa.grid.signal : tpa.grid.idler;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < axis.count; ++k) {
    const double m = signal ? p.row(static_cast<Eigen::Index>(k)).sum()
                            : p.col(static_cast<Eigen::Index>(k)).sum();
    num += m * axis.at(k);
    den += m;
  }
  if (!(den > 0.0)) throw NumericalError("temporal transform of an all-zero amplitude");
  return num / den;
}

}  // namespace

TemporalAmplitude temporal_amplitude(const spdc::TwoPhotonAmplitude& tpa,
                                     const TemporalOptions& options) {
  const std::size_t ns = tpa.grid.signal.count;
  const std::size_t ni = tpa.grid.idler.count;
  const double dws = tpa.grid.signal.step;
  const double dwi = tpa.grid.idler.step;
  const double window = kTwoPi / std::max(dws, dwi);
  if (options.min_window_fs > window) {
    std::ostringstream msg;
    msg << "requested time window " << options.min_window_fs << " fs exceeds 2 pi / d_omega = "
        << window << " fs; refine the frequency grid";
    throw ValidationError(msg.str());
  }
  std::size_t ps = options.fft_size ? options.fft_size : next_pow2(2 * ns);
  std::size_t pi = options.fft_size ? options.fft_size : next_pow2(2 * ni);
  if (ps < ns || pi < ni) throw ValidationError("fft_size smaller than the frequency grid");

  TemporalAmplitude out;
  out.omega_s0 = mean_frequency(tpa, true);
  out.omega_i0 = mean_frequency(tpa, false);
  const double dts = kTwoPi / (static_cast<double>(ps) * dws);
  const double dti = kTwoPi / (static_cast<double>(pi) * dwi);
  out.ts = {-static_cast<double>(ps / 2) * dts, dts, ps};
  out.ti = {-static_cast<double>(pi / 2) * dti, dti, pi};

  std::vector<std::complex<double>> buf(ps * pi, {0.0, 0.0});
  const double norm0 = out.omega_s0 * out.omega_i0;
  for (std::size_t k = 0; k < ns; ++k) {
    const double wsk = tpa.grid.signal.at(k);
    for (std::size_t l = 0; l < ni; ++l) {
      const double wil = tpa.grid.idler.at(l);
      // (-1)^(k+l) moves t = 0 to the middle of the output.
      const double sign = ((k + l) & 1U) ? -1.0 : 1.0;
      buf[k * pi + l] = sign * std::sqrt(wsk * wil / norm0) *
                        tpa.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
    }
  }
  {
    fftw_plan plan;
    {
      std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
      plan = fftw_plan_dft_2d(static_cast<int>(ps), static_cast<int>(pi),
                              reinterpret_cast<fftw_complex*>(buf.data()),
                              reinterpret_cast<fftw_complex*>(buf.data()), FFTW_FORWARD,
                              FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }

  double scale = dws * dwi / kTwoPi;
  if (options.physical_units) {
    // hbar sqrt(ws0 wi0) / (4 pi eps0 c B) in SI: w in 1/s, B in m^2.
    const double w0 = std::sqrt(norm0) * 1e15;
    const double area = options.transverse_area_um2 * 1e-12;
    scale *= kHbarJs * w0 / (4.0 * std::numbers::pi * kEpsilon0 * kSpeedOfLight * 1e9 * area);
  }
  // The k = 0 sample sits at w_start; its carrier appears as a phase in t.
  const double ws_start = tpa.grid.signal.start;
  const double wi_start = tpa.grid.idler.start;
  out.values.resize(static_cast<Eigen::Index>(ps), static_cast<Eigen::Index>(pi));
  for (std::size_t m = 0; m < ps; ++m) {
    const double t_s = out.ts.at(m);
    const std::complex<double> cs = std::polar(1.0, -ws_start * t_s);
    for (std::size_t n = 0; n < pi; ++n) {
      const double t_i = out.ti.at(n);
      out.values(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) =
          scale * cs * std::polar(1.0, -wi_start * t_i) * buf[m * pi + n];
    }
  }

  // Aliasing check on the outer 1 % strips.
  const Eigen::MatrixXd p = out.values.cwiseAbs2();
  const double total = p.sum();
  const auto es = static_cast<Eigen::Index>(std::max<std::size_t>(1, ps / 100));
  const auto ei = static_cast<Eigen::Index>(std::max<std::size_t>(1, pi / 100));
  const auto rs = static_cast<Eigen::Index>(ps);
  double edge = p.topRows(es).sum() + p.bottomRows(es).sum();
  edge += p.middleRows(es, rs - 2 * es).leftCols(ei).sum() +
          p.middleRows(es, rs - 2 * es).rightCols(ei).sum();
  out.aliasing = total > 0.0 && edge > 1e-3 * total;
  return out;
}

double squared_norm(const TemporalAmplitude& temporal) {
  return temporal.values.cwiseAbs2().sum() * temporal.ts.step * temporal.ti.step;
}

double weighted_spectral_norm(const spdc::TwoPhotonAmplitude& tpa, double omega_s0,
                              double omega_i0) {
  double total = 0.0;
  for (std::size_t k = 0; k < tpa.grid.signal.count; ++k) {
    for (std::size_t l = 0; l < tpa.grid.idler.count; ++l) {
      total += tpa.grid.signal.at(k) * tpa.grid.idler.at(l) *
               std::norm(tpa.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)));
    }
  }
  return total * tpa.grid.signal.step * tpa.grid.idler.step / (omega_s0 * omega_i0);
}

FluxSeries photon_flux(const TemporalAmplitude& temporal, Field field, bool electron_volts) {
  const double hbar = electron_volts ? kHbarEvFs : 1.0;
  const Eigen::MatrixXd p = temporal.values.cwiseAbs2();
  FluxSeries out;
  if (field == Field::Signal) {
    out.t = temporal.ts.values();
    const Eigen::VectorXd m = p.rowwise().sum() * temporal.ti.step;
    out.flux.resize(out.t.size());
    for (std::size_t k = 0; k < out.t.size(); ++k) {
      out.flux[k] = hbar * temporal.omega_s0 * m[static_cast<Eigen::Index>(k)];
    }
  } else {
    out.t = temporal.ti.values();
    const Eigen::VectorXd m = p.colwise().sum().transpose() * temporal.ts.step;
    out.flux.resize(out.t.size());
    for (std::size_t k = 0; k < out.t.size(); ++k) {
      out.flux[k] = hbar * temporal.omega_i0 * m[static_cast<Eigen::Index>(k)];
    }
  }
  return out;
}

std::vector<std::size_t> resolved_maxima(std::span<const double> v, double min_rel_height,
                                         double dip_ratio) {
  std::vector<std::size_t> cand;
  if (v.size() < 3) return cand;
  const double top = *std::max_element(v.begin(), v.end());
  if (!(top > 0.0)) return cand;
  for (std::size_t k = 1; k + 1 < v.size(); ++k) {
    if (v[k] >= min_rel_height * top && v[k] > v[k - 1] && v[k] >= v[k + 1]) cand.push_back(k);
  }
  // Strongest first; keep a maximum only if a deep enough valley separates
  // it from every maximum already kept.
  std::sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  std::vector<std::size_t> kept;
  for (std::size_t c : cand) {
    bool ok = true;
    for (std::size_t k : kept) {
      const auto [lo, hi] = std::minmax(c, k);
      const double valley = *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(lo),
                                              v.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
      if (valley > dip_ratio * std::min(v[c], v[k])) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

double sum_time_rms(const TemporalAmplitude& temporal) {
  const Eigen::MatrixXd p = temporal.values.cwiseAbs2();
  double w = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  for (Eigen::Index m = 0; m < p.rows(); ++m) {
    const double ts = temporal.ts.at(static_cast<std::size_t>(m));
    for (Eigen::Index n = 0; n < p.cols(); ++n) {
      const double t = ts + temporal.ti.at(static_cast<std::size_t>(n));
      w += p(m, n);
      m1 += p(m, n) * t;
      m2 += p(m, n) * t * t;
    }
  }
  if (!(w > 0.0)) return 0.0;
  const double mean = m1 / w;
  return std::sqrt(std::max(0.0, m2 / w - mean * mean));
}

}  // namespace rspdc::analysis
