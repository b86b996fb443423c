#include "rspdc/spdc/superposition.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rspdc/analysis/schmidt.hpp"
#include "rspdc/errors.hpp"
#include "rspdc/optics/peaks.hpp"
#include "rspdc/optics/transfer_matrix.hpp"
#include "rspdc/units.hpp"

namespace rspdc::spdc {

namespace {

// phi at fractional grid position (x, y); zero outside.
cdouble sample(const Eigen::MatrixXcd& v, double x, double y) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const auto k = static_cast<Eigen::Index>(fx);
  const auto l = static_cast<Eigen::Index>(fy);
  const double ax = x - fx;
  const double ay = y - fy;
  auto at = [&](Eigen::Index a, Eigen::Index b) -> cdouble {
    if (a < 0 || b < 0 || a >= v.rows() || b >= v.cols()) return {0.0, 0.0};
    return v(a, b);
  };
  return (1.0 - ax) * ((1.0 - ay) * at(k, l) + ay * at(k, l + 1)) +
         ax * ((1.0 - ay) * at(k + 1, l) + ay * at(k + 1, l + 1));
}

double golden_max(const std::function<double(double)>& f, double a, double b) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 80 && (b - a) > 1e-13 * std::abs(b); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

void PinholeSpec::validate() const {
  if (count < 1) throw ValidationError("pinhole count must be >= 1");
  if (count > 1 && !(delta_omega > 0.0)) throw ValidationError("pinhole spacing must be positive");
  if (!std::isfinite(phase_step)) throw ValidationError("pinhole phase must be finite");
}

void AngularRangeSpec::validate() const {
  if (samples < 32) throw ValidationError("angular range needs >= 32 samples");
  if (!(theta_max >= theta_min)) throw ValidationError("theta_max must be >= theta_min");
  if (!(std::abs(std::sin(theta_min)) < 1.0) || !(std::abs(std::sin(theta_max)) < 1.0)) {
    throw DomainError("angular range must stay below 90 deg");
  }
  if (slope_candidates < 1 || slope_candidates % 2 == 0) {
    throw ValidationError("slope_candidates must be odd");
  }
}

TwoPhotonAmplitude superpose_pinholes(const TwoPhotonAmplitude& tpa, const PinholeSpec& spec) {
  spec.validate();
  if (spec.count == 1) return tpa;
  const double span = static_cast<double>(spec.count - 1) * spec.delta_omega;
  const auto extra_s = static_cast<std::size_t>(std::ceil(span / tpa.grid.signal.step - 1e-9));
  const auto extra_i = static_cast<std::size_t>(std::ceil(span / tpa.grid.idler.step - 1e-9));

  TwoPhotonAmplitude out;
  out.grid.signal = {tpa.grid.signal.start - static_cast<double>(extra_s) * tpa.grid.signal.step,
                     tpa.grid.signal.step, tpa.grid.signal.count + extra_s};
  out.grid.idler = {tpa.grid.idler.start - static_cast<double>(extra_i) * tpa.grid.idler.step,
                    tpa.grid.idler.step, tpa.grid.idler.count + extra_i};
  out.normalization = tpa.normalization;
  out.omega_p0 = tpa.omega_p0;
  out.values = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(out.grid.signal.count),
                                      static_cast<Eigen::Index>(out.grid.idler.count));

  const double rs = spec.delta_omega / tpa.grid.signal.step;
  const double ri = spec.delta_omega / tpa.grid.idler.step;
  const bool exact = std::abs(rs - std::round(rs)) < 1e-9 && std::abs(ri - std::round(ri)) < 1e-9;
  for (std::size_t n = 0; n < spec.count; ++n) {
    const cdouble w = std::polar(1.0, static_cast<double>(n) * spec.phase_step);
    const double sx = static_cast<double>(n) * rs;
    const double sy = static_cast<double>(n) * ri;
    for (Eigen::Index k = 0; k < out.values.rows(); ++k) {
      // output index k sits at input position k - extra + n * shift
      const double x = static_cast<double>(k) - static_cast<double>(extra_s) + sx;
      for (Eigen::Index l = 0; l < out.values.cols(); ++l) {
        const double y = static_cast<double>(l) - static_cast<double>(extra_i) + sy;
        cdouble v;
        if (exact) {
          const auto a = static_cast<Eigen::Index>(std::llround(x));
          const auto b = static_cast<Eigen::Index>(std::llround(y));
          if (a < 0 || b < 0 || a >= tpa.values.rows() || b >= tpa.values.cols()) continue;
          v = tpa.values(a, b);
        } else {
          v = sample(tpa.values, x, y);
        }
        out.values(k, l) += w * v;
      }
    }
  }
  out.coarse_grid = tpa.coarse_grid;
  if (out.normalization == Normalization::Paper) normalize_paper(out);
  return out;
}

AngularSuperposition superpose_angular_range(const optics::LayerStack& stack,
                                             const PumpConfig& pump, const AngularRangeSpec& spec,
                                             const FrequencyGrid& grid,
                                             Normalization normalization) {
  spec.validate();
  pump.validate();
  grid.validate(64);

  // Locate the peak to track at theta_min.
  const double guess = spec.omega_guess > 0.0 ? spec.omega_guess : 0.5 * pump.omega_p0;
  const auto found = optics::scan_peaks(stack, guess * 0.99, guess * 1.01, spec.theta_min);
  if (found.peaks.empty()) {
    std::ostringstream msg;
    msg << "no transmission peak near " << guess << " rad/fs at theta = "
        << rad_to_deg(spec.theta_min) << " deg";
    throw DomainError(msg.str());
  }
  const optics::Peak start = *std::min_element(
      found.peaks.begin(), found.peaks.end(), [&](const optics::Peak& a, const optics::Peak& b) {
        return std::abs(a.omega_c - guess) < std::abs(b.omega_c - guess);
      });

  AngularSuperposition out;
  const std::size_t n = spec.samples;
  const double theta_mid = 0.5 * (spec.theta_min + spec.theta_max);
  double prev = start.omega_c;
  std::vector<Eigen::MatrixXcd> parts;
  parts.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double theta = n == 1 ? spec.theta_min
                                : spec.theta_min + (spec.theta_max - spec.theta_min) *
                                                       static_cast<double>(j) /
                                                       static_cast<double>(n - 1);
    // Follow the peak: coarse look around the previous centre, then polish.
    auto t_of = [&](double w) { return optics::transmittance(stack, w, theta); };
    const double reach = 10.0 * start.fwhm_omega;
    double best_w = prev;
    double best_t = -1.0;
    for (int q = -30; q <= 30; ++q) {
      const double w = prev + reach * q / 30.0;
      const double t = t_of(w);
      if (t > best_t) {
        best_t = t;
        best_w = w;
      }
    }
    const double step = reach / 30.0;
    const double wc = golden_max(t_of, best_w - step, best_w + step);
    if (t_of(wc) < 0.5 * start.t_max) {
      std::ostringstream msg;
      msg << "tracked transmission peak lost at theta = " << rad_to_deg(theta) << " deg";
      throw DomainError(msg.str());
    }
    prev = wc;
    out.theta.push_back(theta);
    out.peak_omega.push_back(wc);
    EmissionGeometry g;
    g.theta_s = theta;
    AmplitudeModel model(stack, pump, g);
    parts.push_back(model.evaluate(grid));
  }

  auto combine = [&](double beta) {
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(parts[0].rows(), parts[0].cols());
    for (std::size_t j = 0; j < n; ++j) {
      sum += std::polar(1.0, beta * (out.theta[j] - theta_mid)) * parts[j];
    }
    return Eigen::MatrixXcd(sum / static_cast<double>(n));
  };
  TwoPhotonAmplitude probe;
  probe.grid = grid;
  probe.omega_p0 = pump.omega_p0;
  probe.normalization = Normalization::Physical;
  auto first_weight = [&](double beta) {
    probe.values = combine(beta);
    return analysis::schmidt_decompose(probe, false).weights.front();
  };

  double beta = 0.0;
  const double range = spec.theta_max - spec.theta_min;
  if (range > 0.0) {
    // Initial slope from the phase of phi_theta at its own peak.
    std::vector<double> phase(n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto k = static_cast<Eigen::Index>(std::llround(
          std::clamp((out.peak_omega[j] - grid.signal.start) / grid.signal.step, 0.0,
                     static_cast<double>(grid.signal.count - 1))));
      const auto l = static_cast<Eigen::Index>(std::llround(
          std::clamp((out.peak_omega[j] - grid.idler.start) / grid.idler.step, 0.0,
                     static_cast<double>(grid.idler.count - 1))));
      phase[j] = std::arg(parts[j](k, l));
      if (j > 0) {
        while (phase[j] - phase[j - 1] > std::numbers::pi) phase[j] -= kTwoPi;
        while (phase[j] - phase[j - 1] < -std::numbers::pi) phase[j] += kTwoPi;
      }
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      mx += out.theta[j];
      my += phase[j];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sxy += (out.theta[j] - mx) * (phase[j] - my);
      sxx += (out.theta[j] - mx) * (out.theta[j] - mx);
    }
    const double fitted = -sxy / sxx;
    const double delta = kTwoPi / range / static_cast<double>(spec.slope_candidates - 1);
    const auto half = static_cast<int>(spec.slope_candidates / 2);
    double best = -1.0;
    for (int q = -half; q <= half; ++q) {
      const double b = fitted + q * delta;
      const double w = first_weight(b);
      if (w > best) {
        best = w;
        beta = b;
      }
    }
    beta = golden_max(first_weight, beta - delta, beta + delta);
  }

  out.phase_slope = beta;
  out.amplitude.grid = grid;
  out.amplitude.omega_p0 = pump.omega_p0;
  out.amplitude.normalization = Normalization::Physical;
  out.amplitude.values = combine(beta);
  out.amplitude.coarse_grid = grid_too_coarse(out.amplitude.values);
  out.first_weight = analysis::schmidt_decompose(out.amplitude, false).weights.front();
  if (normalization == Normalization::Paper) normalize_paper(out.amplitude);
  return out;
}

}  // namespace rspdc::spdc
