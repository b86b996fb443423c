#include "rspdc/analysis/interferometry.hpp"

#include <cmath>
#include <numbers>

#include <fftw3.h>

#include "fft_lock.hpp"

#include "rspdc/errors.hpp"
#include "rspdc/units.hpp"

namespace rspdc::analysis {

namespace {

using cdouble = std::complex<double>;

// Quadrature-weighted w_s w_i |phi|^2.
Eigen::MatrixXd intensity_weights(const spdc::TwoPhotonAmplitude& tpa) {
  const auto ws = trapezoid_weights(tpa.grid.signal);
  const auto wi = trapezoid_weights(tpa.grid.idler);
  Eigen::MatrixXd w = tpa.values.cwiseAbs2();
  for (Eigen::Index k = 0; k < w.rows(); ++k) {
    const auto ku = static_cast<std::size_t>(k);
    for (Eigen::Index l = 0; l < w.cols(); ++l) {
      const auto lu = static_cast<std::size_t>(l);
      w(k, l) *= ws[ku] * wi[lu] * tpa.grid.signal.at(ku) * tpa.grid.idler.at(lu);
    }
  }
  return w;
}

Eigen::MatrixXcd phase_matrix(std::span<const double> tau, const UniformAxis& axis, double sign) {
  Eigen::MatrixXcd e(static_cast<Eigen::Index>(tau.size()), static_cast<Eigen::Index>(axis.count));
  for (std::size_t a = 0; a < tau.size(); ++a) {
    for (std::size_t k = 0; k < axis.count; ++k) {
      e(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k)) =
          std::polar(1.0, sign * axis.at(k) * tau[a]);
    }
  }
  return e;
}

}  // namespace

namespace {

// g_d = sum over l - k = d of the swap product; the HOM phase depends on d only.
std::vector<cdouble> hom_diagonals(const spdc::TwoPhotonAmplitude& tpa, double& r00) {
  if (!tpa.grid.square()) {
    throw ValidationError(
        "hom_rate needs a square grid (same signal and idler axis); resample the amplitude");
  }
  const std::size_t n = tpa.grid.signal.count;
  const auto w = trapezoid_weights(tpa.grid.signal);
  std::vector<cdouble> g(2 * n - 1, {0.0, 0.0});
  r00 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double wk = tpa.grid.signal.at(k);
    for (std::size_t l = 0; l < n; ++l) {
      const double wl = tpa.grid.signal.at(l);
      const cdouble a = tpa.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
      const cdouble b = tpa.values(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(k));
      const double q = w[k] * w[l] * wk * wl;
      g[l + n - 1 - k] += q * a * std::conj(b);
      r00 += q * std::norm(a);
    }
  }
  if (!(r00 > 0.0)) throw NumericalError("hom_rate of an all-zero amplitude");
  return g;
}

}  // namespace

HomPattern hom_rate(const spdc::TwoPhotonAmplitude& tpa, std::span<const double> tau) {
  double r00 = 0.0;
  const auto g = hom_diagonals(tpa, r00);
  const std::size_t n = tpa.grid.signal.count;
  const double dw = tpa.grid.signal.step;
  HomPattern out;
  out.tau.assign(tau.begin(), tau.end());
  out.rate.resize(tau.size());
  for (std::size_t a = 0; a < tau.size(); ++a) {
    double re = 0.0;
    for (std::size_t d = 0; d < g.size(); ++d) {
      const double shift = (static_cast<double>(d) - static_cast<double>(n - 1)) * dw;
      re += (g[d] * std::polar(1.0, shift * tau[a])).real();
    }
    out.rate[a] = 1.0 - re / r00;
  }
  return out;
}

HomOscillation hom_oscillation(const spdc::TwoPhotonAmplitude& tpa) {
  double r00 = 0.0;
  const auto g = hom_diagonals(tpa, r00);
  const std::size_t n = tpa.grid.signal.count;
  // |g_-d| = |g_d|, so the positive half is enough.
  std::vector<double> mag(n);
  for (std::size_t d = 0; d < n; ++d) mag[d] = std::abs(g[n - 1 + d]);
  std::size_t best = 0;
  for (std::size_t d = 1; d + 1 < n; ++d) {
    if (mag[d] > mag[d - 1] && mag[d] >= mag[d + 1] && (best == 0 || mag[d] > mag[best])) best = d;
  }
  if (best == 0) throw NumericalError("HOM interferogram has no oscillating component");
  double offset = 0.0;
  const double den = mag[best - 1] - 2.0 * mag[best] + mag[best + 1];
  if (den < 0.0) offset = 0.5 * (mag[best - 1] - mag[best + 1]) / den;
  HomOscillation out;
  out.delta_omega = (static_cast<double>(best) + offset) * tpa.grid.signal.step;
  out.period_fs = 2.0 * std::numbers::pi / out.delta_omega;
  out.relative_weight = 2.0 * mag[best] / r00;
  return out;
}

cdouble franson_correlation(const spdc::TwoPhotonAmplitude& tpa, double tau_s, double tau_i) {
  const Eigen::MatrixXd w = intensity_weights(tpa);
  cdouble acc{0.0, 0.0};
  for (Eigen::Index k = 0; k < w.rows(); ++k) {
    const cdouble es = std::polar(1.0, tpa.grid.signal.at(static_cast<std::size_t>(k)) * tau_s);
    cdouble row{0.0, 0.0};
    for (Eigen::Index l = 0; l < w.cols(); ++l) {
      row += w(k, l) * std::polar(1.0, tpa.grid.idler.at(static_cast<std::size_t>(l)) * tau_i);
    }
    acc += es * row;
  }
  return acc;
}

FransonPattern franson_rate(const spdc::TwoPhotonAmplitude& tpa, std::span<const double> tau_s,
                            std::span<const double> tau_i) {
  const Eigen::MatrixXd w = intensity_weights(tpa);
  const double r00 = w.sum();
  if (!(r00 > 0.0)) throw NumericalError("franson_rate of an all-zero amplitude");
  const Eigen::MatrixXcd es = phase_matrix(tau_s, tpa.grid.signal, 1.0);
  const Eigen::MatrixXcd ei = phase_matrix(tau_i, tpa.grid.idler, 1.0);
  const Eigen::MatrixXcd left = es * w.cast<cdouble>();                 // (a, l)
  const Eigen::MatrixXcd plus = left * ei.transpose();                  // R(ts, ti)
  const Eigen::MatrixXcd minus = left * ei.conjugate().transpose();     // R(ts, -ti)
  const Eigen::VectorXcd rs = left.rowwise().sum();                     // R(ts, 0)
  const Eigen::VectorXcd ri = ei * w.colwise().sum().transpose().cast<cdouble>();  // R(0, ti)

  FransonPattern out;
  out.tau_s.assign(tau_s.begin(), tau_s.end());
  out.tau_i.assign(tau_i.begin(), tau_i.end());
  out.rate.resize(static_cast<Eigen::Index>(tau_s.size()), static_cast<Eigen::Index>(tau_i.size()));
  for (Eigen::Index a = 0; a < out.rate.rows(); ++a) {
    for (Eigen::Index b = 0; b < out.rate.cols(); ++b) {
      const double re = 2.0 * rs[a].real() + 2.0 * ri[b].real() + plus(a, b).real() +
                        minus(a, b).real();
      out.rate(a, b) = 0.25 + re / (8.0 * r00);
    }
  }
  return out;
}

FringeOrientation fringe_orientation(const Eigen::MatrixXd& pattern, double step_s,
                                     double step_i) {
  const auto rows = static_cast<std::size_t>(pattern.rows());
  const auto cols = static_cast<std::size_t>(pattern.cols());
  if (rows < 8 || cols < 8) throw ValidationError("fringe_orientation needs at least 8x8 samples");
  std::size_t ps = 1;
  while (ps < 4 * rows) ps <<= 1;
  std::size_t pi = 1;
  while (pi < 4 * cols) pi <<= 1;

  const double mean = pattern.mean();
  std::vector<cdouble> buf(ps * pi, {0.0, 0.0});
  auto hann = [](std::size_t k, std::size_t n) {
    return 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(k) / static_cast<double>(n - 1));
  };
  for (std::size_t a = 0; a < rows; ++a) {
    for (std::size_t b = 0; b < cols; ++b) {
      buf[a * pi + b] = (pattern(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) - mean) *
                        hann(a, rows) * hann(b, cols);
    }
  }
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    plan = fftw_plan_dft_2d(static_cast<int>(ps), static_cast<int>(pi),
                            reinterpret_cast<fftw_complex*>(buf.data()),
                            reinterpret_cast<fftw_complex*>(buf.data()), FFTW_FORWARD,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }

  // The real input makes the spectrum symmetric; search the half plane
  // ks >= 0 and skip the zero-frequency lobe of the taper.
  const auto signed_index = [](std::size_t k, std::size_t n) {
    return k < n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
  };
  const double guard_s = 2.0 * static_cast<double>(ps) / static_cast<double>(rows);
  const double guard_i = 2.0 * static_cast<double>(pi) / static_cast<double>(cols);
  double best = -1.0;
  std::size_t ba = 0;
  std::size_t bb = 0;
  for (std::size_t a = 0; a <= ps / 2; ++a) {
    for (std::size_t b = 0; b < pi; ++b) {
      const double fa = signed_index(a, ps);
      const double fb = signed_index(b, pi);
      if ((fa / guard_s) * (fa / guard_s) + (fb / guard_i) * (fb / guard_i) < 1.0) continue;
      const double m = std::norm(buf[a * pi + b]);
      if (m > best) {
        best = m;
        ba = a;
        bb = b;
      }
    }
  }
  // Parabolic refinement along each axis.
  auto refine = [&](std::size_t a, std::size_t b, bool along_s) {
    const std::size_t n = along_s ? ps : pi;
    const std::size_t c = along_s ? a : b;
    const std::size_t lo = (c + n - 1) % n;
    const std::size_t hi = (c + 1) % n;
    auto at = [&](std::size_t q) {
      return along_s ? std::abs(buf[q * pi + b]) : std::abs(buf[a * pi + q]);
    };
    const double y0 = at(lo);
    const double y1 = at(c);
    const double y2 = at(hi);
    const double den = y0 - 2.0 * y1 + y2;
    return den < 0.0 ? 0.5 * (y0 - y2) / den : 0.0;
  };
  const double fa = signed_index(ba, ps) + refine(ba, bb, true);
  const double fb = signed_index(bb, pi) + refine(ba, bb, false);
  const double ks = kTwoPi * fa / (static_cast<double>(ps) * step_s);
  const double ki = kTwoPi * fb / (static_cast<double>(pi) * step_i);

  FringeOrientation out;
  double ang = rad_to_deg(std::atan2(ki, ks));
  ang = std::fmod(ang + 360.0, 180.0);
  out.wavevector_deg = ang;
  out.fringe_deg = std::fmod(ang + 90.0, 180.0);
  out.magnitude = std::hypot(ks, ki);
  return out;
}

}  // namespace rspdc::analysis
