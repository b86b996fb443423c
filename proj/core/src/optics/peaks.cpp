#include "rspdc/optics/peaks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rspdc/errors.hpp"
#include "rspdc/units.hpp"

namespace rspdc::optics {

namespace {

double lerp_crossing(double w0, double t0, double w1, double t1, double level) {
  if (t1 == t0) return 0.5 * (w0 + w1);
  return w0 + (level - t0) * (w1 - w0) / (t1 - t0);
}

Peak make_peak(double center, double lo, double hi, double t_max) {
  Peak p;
  p.omega_c = center;
  p.fwhm_omega = hi - lo;
  p.fwhm_nm = (wavelength_from_omega(lo) - wavelength_from_omega(hi)) * 1000.0;
  p.t_max = t_max;
  return p;
}

}  // namespace

PeakList find_peaks(std::span<const double> omega, std::span<const double> T,
                    double floor_fraction) {
  if (omega.size() != T.size()) throw ValidationError("find_peaks: size mismatch");
  PeakList out;
  const std::size_t n = T.size();
  if (n < 3) return out;
  const double gmax = *std::max_element(T.begin(), T.end());
  if (!(gmax > 0.0)) return out;
  const double floor = floor_fraction * gmax;

  for (std::size_t k = 0; k < n; ++k) {
    const bool left_ok = k == 0 || T[k] > T[k - 1];
    const bool right_ok = k + 1 == n || T[k] >= T[k + 1];
    if (!left_ok || !right_ok) continue;
    if (k == 0 && T[0] == T[1]) continue;
    if (T[k] < floor) continue;
    const double half = 0.5 * T[k];

    bool ok = true;
    double lo = 0.0;
    std::size_t j = k;
    for (;;) {
      if (j == 0) {
        ok = false;
        break;
      }
      --j;
      if (T[j] > T[k]) {
        ok = false;
        break;
      }
      if (T[j] < half) {
        lo = lerp_crossing(omega[j], T[j], omega[j + 1], T[j + 1], half);
        break;
      }
    }
    double hi = 0.0;
    if (ok) {
      j = k;
      for (;;) {
        if (j + 1 >= n) {
          ok = false;
          break;
        }
        ++j;
        if (T[j] > T[k]) {
          ok = false;
          break;
        }
        if (T[j] < half) {
          hi = lerp_crossing(omega[j - 1], T[j - 1], omega[j], T[j], half);
          break;
        }
      }
    }
    if (!ok) {
      ++out.dropped;
      continue;
    }
    // Parabolic vertex through the three samples around the maximum.
    double center = omega[k];
    if (k > 0 && k + 1 < n) {
      const double a = T[k - 1], b = T[k], c = T[k + 1];
      const double denom = a - 2.0 * b + c;
      if (denom < 0.0) {
        const double shift = 0.5 * (a - c) / denom;
        center = omega[k] + shift * (omega[k + 1] - omega[k - 1]) * 0.5;
      }
    }
    out.peaks.push_back(make_peak(center, lo, hi, T[k]));
  }
  return out;
}

PeakList find_peaks(const TransmissionSpectrum& spectrum, double floor_fraction) {
  const auto T = spectrum.transmittance();
  return find_peaks(spectrum.omega, T, floor_fraction);
}

PeakList scan_peaks(const LayerStack& stack, double omega_min, double omega_max,
                    double theta_ext, const ScanOptions& options) {
  if (!(omega_max > omega_min)) throw ValidationError("scan_peaks: empty band");
  const double s = std::sin(theta_ext);
  if (!(std::abs(s) < 1.0)) throw DomainError("evanescent input angle");

  auto T_at = [&](double w) {
    return std::norm(transmission_amplitude(resolve(stack, w), w, s));
  };

  PeakList out;
  const double omega_mid = 0.5 * (omega_min + omega_max);
  const double l_opt = stack.empty() ? 0.0 : stack.optical_length(omega_mid);
  if (l_opt <= 0.0) return out;
  const double mode_spacing = std::numbers::pi * kSpeedOfLight / l_opt;
  const double coarse_step = mode_spacing / options.coarse_steps_per_mode;

  // Pad the coarse scan so maxima sitting on the band edge are still seen.
  const double scan_lo = omega_min - 2.0 * coarse_step;
  const double scan_hi = omega_max + 2.0 * coarse_step;
  const auto n_coarse = static_cast<std::size_t>(std::ceil((scan_hi - scan_lo) / coarse_step)) + 1;
  std::vector<double> w(n_coarse), T(n_coarse);
  for (std::size_t i = 0; i < n_coarse; ++i) {
    w[i] = scan_lo + coarse_step * static_cast<double>(i);
    T[i] = T_at(w[i]);
  }

  struct Candidate {
    double center;
    double t_max;
    double fwhm_estimate;
    bool resolved;
  };
  std::vector<Candidate> candidates;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);

  for (std::size_t k = 1; k + 1 < n_coarse; ++k) {
    if (!(T[k] > T[k - 1] && T[k] >= T[k + 1])) continue;

    // Golden-section search for the maximum inside the coarse bracket.
    double a = w[k - 1], b = w[k + 1];
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = T_at(c), fd = T_at(d);
    for (int it = 0; it < 60 && (b - a) > 1e-12 * omega_mid; ++it) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - phi * (b - a);
        fc = T_at(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + phi * (b - a);
        fd = T_at(d);
      }
    }
    double center = 0.5 * (a + b);
    double t_c = T_at(center);
    if (T[k] > t_c) {
      center = w[k];
      t_c = T[k];
    }

    // Walk out to the half-maximum on each side, then bisect.
    const double half = 0.5 * t_c;
    const double max_reach = 2.0 * mode_spacing;
    bool resolved = true;
    double edges[2] = {0.0, 0.0};
    for (int side = 0; side < 2 && resolved; ++side) {
      const double sign = side == 0 ? -1.0 : 1.0;
      double inner = 0.0;
      double h = 1e-9 * omega_mid;
      for (;;) {
        const double value = T_at(center + sign * h);
        if (value > t_c * (1.0 + 1e-9)) {
          resolved = false;
          break;
        }
        if (value < half) break;
        inner = h;
        h *= 2.0;
        if (h > max_reach) {
          resolved = false;
          break;
        }
      }
      if (!resolved) break;
      double outer = h;
      for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (inner + outer);
        if (T_at(center + sign * mid) < half) {
          outer = mid;
        } else {
          inner = mid;
        }
      }
      edges[side] = 0.5 * (inner + outer);
    }
    candidates.push_back({center, t_c, edges[0] + edges[1], resolved});
  }

  // Several coarse maxima may polish to the same resonance.
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& x, const Candidate& y) { return x.center < y.center; });
  std::vector<Candidate> unique;
  for (const auto& cand : candidates) {
    if (!unique.empty()) {
      auto& prev = unique.back();
      const double width = std::max(prev.fwhm_estimate, cand.fwhm_estimate);
      if (std::abs(cand.center - prev.center) < 0.25 * width ||
          std::abs(cand.center - prev.center) < 1e-10 * omega_mid) {
        if (cand.t_max > prev.t_max) prev = cand;
        continue;
      }
    }
    unique.push_back(cand);
  }

  double gmax = 0.0;
  for (const auto& cand : unique) {
    if (cand.center >= omega_min && cand.center <= omega_max) gmax = std::max(gmax, cand.t_max);
  }
  if (!(gmax > 0.0)) return out;
  const double floor = options.floor_fraction * gmax;

  for (const auto& cand : unique) {
    if (cand.center < omega_min || cand.center > omega_max) continue;
    if (cand.t_max < floor) continue;
    if (!cand.resolved || !(cand.fwhm_estimate > 0.0)) {
      ++out.dropped;
      continue;
    }
    const double step = cand.fwhm_estimate / static_cast<double>(options.samples_per_fwhm);
    const auto half_n = static_cast<std::size_t>(
        std::ceil(options.window_fwhm * static_cast<double>(options.samples_per_fwhm)));
    const std::size_t n = 2 * half_n + 1;
    std::vector<double> fw(n), fT(n);
    for (std::size_t i = 0; i < n; ++i) {
      fw[i] = cand.center + (static_cast<double>(i) - static_cast<double>(half_n)) * step;
      fT[i] = T_at(fw[i]);
    }
    const PeakList local = find_peaks(fw, fT, 0.0);
    const Peak* best = nullptr;
    for (const auto& p : local.peaks) {
      if (!best || std::abs(p.omega_c - cand.center) < std::abs(best->omega_c - cand.center)) {
        best = &p;
      }
    }
    if (best == nullptr || std::abs(best->omega_c - cand.center) > cand.fwhm_estimate) {
      ++out.dropped;
      continue;
    }
    out.peaks.push_back(*best);
  }
  return out;
}

}  // namespace rspdc::optics
