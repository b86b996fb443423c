#include "rspdc/spdc/correlation_area.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rspdc/errors.hpp"
#include "rspdc/grid.hpp"
#include "rspdc/optics/peaks.hpp"
#include "rspdc/optics/transfer_matrix.hpp"
#include "rspdc/units.hpp"

namespace rspdc::spdc {

namespace {

struct Moments {
  double rms_theta = 0.0;
  double rms_psi = 0.0;
  double edge_fraction = 0.0;
};

}  // namespace

CorrelationArea correlation_area(const optics::LayerStack& stack, const PumpConfig& pump,
                                 const EmissionGeometry& geometry,
                                 const CorrelationAreaOptions& options) {
  pump.validate();
  geometry.validate();
  const double theta = std::abs(geometry.theta_s);
  if (!(theta > 0.0)) throw DomainError("correlation area needs a non-zero signal angle");
  if (options.omega_samples < 5 || options.angle_samples < 11) {
    throw ValidationError("correlation area needs >= 5 frequency and >= 11 angle samples");
  }

  const double center = 0.5 * pump.omega_p0;
  const auto peaks = optics::scan_peaks(stack, center * (1.0 - options.search_window),
                                        center * (1.0 + options.search_window), theta);
  if (peaks.peaks.empty()) {
    std::ostringstream msg;
    msg << "no transmission peak within " << options.search_window * 100.0
        << " % of w_p0/2 at theta_s = " << rad_to_deg(theta) << " deg";
    throw DomainError(msg.str());
  }
  const optics::Peak peak = *std::min_element(
      peaks.peaks.begin(), peaks.peaks.end(), [&](const optics::Peak& a, const optics::Peak& b) {
        return std::abs(a.omega_c - center) < std::abs(b.omega_c - center);
      });

  CorrelationArea out;
  out.peak_omega = peak.omega_c;
  out.peak_fwhm = peak.fwhm_omega;
  out.beam_diameter_um = std::isfinite(pump.beam_diameter_um)
                             ? pump.beam_diameter_um
                             : 2.0 * std::sqrt(geometry.transverse_area_um2 / std::numbers::pi);
  const double w = 0.5 * out.beam_diameter_um;

  const double half = options.omega_window_fwhm * peak.fwhm_omega;
  const UniformAxis omega =
      UniformAxis::linspace(peak.omega_c - half, peak.omega_c + half, options.omega_samples);
  const auto quad = trapezoid_weights(omega);
  const std::size_t nw = omega.count;

  const double sin_s = std::sin(theta);
  std::vector<double> ts(nw);
  for (std::size_t k = 0; k < nw; ++k) ts[k] = optics::transmittance(stack, omega.at(k), theta);
  std::vector<double> env2(nw * nw);
  for (std::size_t k = 0; k < nw; ++k) {
    for (std::size_t l = 0; l < nw; ++l) {
      const double e = pump.envelope(omega.at(k) + omega.at(l));
      env2[k * nw + l] = e * e * quad[k] * quad[l] * ts[k];
    }
  }
  std::vector<optics::ResolvedStack> resolved;
  resolved.reserve(nw);
  for (std::size_t l = 0; l < nw; ++l) resolved.push_back(optics::resolve(stack, omega.at(l)));

  const std::size_t na = options.angle_samples;
  auto evaluate = [&](double wt, double wp) {
    const UniformAxis dth = UniformAxis::linspace(-wt, wt, na);
    const UniformAxis dps = UniformAxis::linspace(-wp, wp, na);
    std::vector<double> ti(nw * na, 0.0);
    for (std::size_t a = 0; a < na; ++a) {
      const double s = std::sin(theta + dth.at(a));
      if (!(std::abs(s) < 1.0)) continue;
      for (std::size_t l = 0; l < nw; ++l) {
        ti[l * na + a] = std::norm(optics::transmission_amplitude(resolved[l], omega.at(l), s));
      }
    }
    std::vector<double> dist(na * na, 0.0);
    for (std::size_t a = 0; a < na; ++a) {
      const double si = std::sin(theta + dth.at(a));
      for (std::size_t b = 0; b < na; ++b) {
        const double cp = std::cos(dps.at(b));
        const double sp = std::sin(dps.at(b));
        double acc = 0.0;
        for (std::size_t k = 0; k < nw; ++k) {
          const double qs = omega.at(k) * sin_s;
          for (std::size_t l = 0; l < nw; ++l) {
            const double t = ti[l * na + a];
            if (t == 0.0) continue;
            const double qx = (qs - omega.at(l) * si * cp) / kSpeedOfLight;
            const double qy = -omega.at(l) * si * sp / kSpeedOfLight;
            acc += env2[k * nw + l] * t * std::exp(-0.5 * (qx * qx + qy * qy) * w * w);
          }
        }
        dist[a * na + b] = acc;
      }
    }
    Moments m;
    double total = 0.0;
    double mt = 0.0;
    double mt2 = 0.0;
    double mp = 0.0;
    double mp2 = 0.0;
    double edge = 0.0;
    const std::size_t band = std::max<std::size_t>(1, na / 20);
    for (std::size_t a = 0; a < na; ++a) {
      for (std::size_t b = 0; b < na; ++b) {
        const double p = dist[a * na + b];
        total += p;
        mt += p * dth.at(a);
        mt2 += p * dth.at(a) * dth.at(a);
        mp += p * dps.at(b);
        mp2 += p * dps.at(b) * dps.at(b);
        if (a < band || b < band || a + band >= na || b + band >= na) edge += p;
      }
    }
    if (!(total > 0.0)) throw NumericalError("correlation-area distribution vanished");
    mt /= total;
    mp /= total;
    m.rms_theta = std::sqrt(std::max(0.0, mt2 / total - mt * mt));
    m.rms_psi = std::sqrt(std::max(0.0, mp2 / total - mp * mp));
    m.edge_fraction = edge / total;
    return m;
  };

  // Start from the pump-limited scales and adapt the window until the
  // distribution is neither clipped nor under-resolved.
  const double k0 = peak.omega_c / kSpeedOfLight;
  const double spectral = peak.fwhm_omega / peak.omega_c * (1.0 + std::tan(theta));
  double wt = 8.0 * std::max(1.0 / (w * k0 * std::cos(theta)), spectral);
  double wp = 8.0 * std::max(1.0 / (w * k0 * sin_s), spectral);
  Moments m;
  for (int iter = 0; iter < 12; ++iter) {
    m = evaluate(wt, wp);
    bool changed = false;
    if (m.edge_fraction > 1e-3) {
      wt *= 2.0;
      wp *= 2.0;
      changed = true;
    } else {
      if (8.0 * m.rms_theta < wt / 3.0) {
        wt = 8.0 * m.rms_theta;
        changed = true;
      }
      if (8.0 * m.rms_psi < wp / 3.0) {
        wp = 8.0 * m.rms_psi;
        changed = true;
      }
    }
    if (!changed) break;
  }
  out.sigma_theta_rad = m.rms_theta;
  out.sigma_psi_rad = m.rms_psi;
  return out;
}

}  // namespace rspdc::spdc
