#include "rspdc/ensemble/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "rspdc/ensemble/campaign.hpp"
#include "rspdc/ensemble/seed.hpp"
#include "rspdc/errors.hpp"
#include "rspdc/optics/generator.hpp"
#include "rspdc/optics/material.hpp"
#include "rspdc/optics/transfer_matrix.hpp"
#include "rspdc/units.hpp"

namespace rspdc::ensemble {

void SearchCriteria::validate() const {
  if (!(min_t_max > 0.0)) throw ValidationError("min_t_max must be positive");
  if (!(ratio_target >= 1.0)) throw ValidationError("ratio_target must be >= 1");
  if (!(ratio_tolerance >= 0.0)) throw ValidationError("ratio_tolerance must be >= 0");
  if (!(pump_floor >= 0.0)) throw ValidationError("pump_floor must be >= 0");
  if (!(band_lo_fraction > 0.0) || !(band_hi_fraction > band_lo_fraction)) {
    throw ValidationError("search band must satisfy 0 < lo < hi");
  }
  if (!(min_enhancement >= 0.0)) throw ValidationError("min_enhancement must be >= 0");
  if (min_enhancement > 0.0 && (mode != SearchMode::Degenerate || theta_rad != 0.0)) {
    throw ValidationError("min_enhancement applies to collinear degenerate searches only");
  }
  if (!(pump_duration_fs > 0.0)) throw ValidationError("pump duration must be positive");
}

std::vector<optics::Peak> match_structure(const optics::LayerStack& stack, double lambda0_um,
                                          const SearchCriteria& criteria, double* omega_p,
                                          double* pump_t, double* enhancement) {
  const double w0 = omega_from_wavelength(lambda0_um);
  const auto found = optics::scan_peaks(stack, w0 * criteria.band_lo_fraction,
                                        w0 * criteria.band_hi_fraction, criteria.theta_rad);
  std::vector<optics::Peak> strong;
  for (const auto& p : found.peaks) {
    if (p.t_max >= criteria.min_t_max) strong.push_back(p);
  }
  auto pump_ok = [&](double wp) {
    if (!optics::SupportedBand::contains(wp)) return -1.0;
    return optics::transmittance(stack, wp, 0.0);
  };
  if (criteria.mode == SearchMode::Degenerate) {
    std::sort(strong.begin(), strong.end(),
              [](const optics::Peak& a, const optics::Peak& b) { return a.t_max > b.t_max; });
    for (const auto& p : strong) {
      const double t = pump_ok(2.0 * p.omega_c);
      if (t >= criteria.pump_floor) {
        double e = 0.0;
        if (criteria.min_enhancement > 0.0) {
          e = peak_enhancement(stack, p, criteria.pump_duration_fs);
          if (e < criteria.min_enhancement) continue;
        }
        if (enhancement) *enhancement = e;
        if (omega_p) *omega_p = 2.0 * p.omega_c;
        if (pump_t) *pump_t = t;
        return {p};
      }
    }
    return {};
  }
  const double lo = criteria.ratio_target * (1.0 - criteria.ratio_tolerance);
  const double hi = criteria.ratio_target * (1.0 + criteria.ratio_tolerance);
  double best_score = -1.0;
  std::vector<optics::Peak> best;
  for (std::size_t a = 0; a < strong.size(); ++a) {
    for (std::size_t b = a + 1; b < strong.size(); ++b) {
      const optics::Peak& wide =
          strong[a].fwhm_omega >= strong[b].fwhm_omega ? strong[a] : strong[b];
      const optics::Peak& narrow =
          strong[a].fwhm_omega >= strong[b].fwhm_omega ? strong[b] : strong[a];
      const double ratio = wide.fwhm_omega / narrow.fwhm_omega;
      if (ratio < lo || ratio > hi) continue;
      if (std::abs(wide.omega_c - narrow.omega_c) < 6.0 * (wide.fwhm_omega + narrow.fwhm_omega)) {
        continue;
      }
      const double wp = wide.omega_c + narrow.omega_c;
      const double t = pump_ok(wp);
      if (t < criteria.pump_floor) continue;
      // Prefer the ratio closest to the target.
      const double score = -std::abs(std::log(ratio / criteria.ratio_target));
      if (best.empty() || score > best_score) {
        best_score = score;
        best = {wide, narrow};
        if (omega_p) *omega_p = wp;
        if (pump_t) *pump_t = t;
      }
    }
  }
  return best;
}

SearchResult search_structures(const GeneratorSpace& space, const SearchCriteria& criteria,
                               std::size_t budget, std::size_t max_matches, bool stop_early,
                               std::size_t workers) {
  criteria.validate();
  optics::GeneratorParams probe{space.lambda0_um, space.n_elem, space.jitter_sigma_um, 0};
  probe.validate();

  struct Slot {
    bool done = false;
    bool failed = false;
    bool matched = false;
    SearchMatch match;
  };
  std::vector<Slot> slots(budget);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> limit{budget};
  std::mutex mu;
  std::size_t found = 0;

  auto work = [&] {
    for (std::size_t i = next++; i < limit.load(); i = next++) {
      Slot& s = slots[i];
      try {
        const std::uint64_t seed = derive_seed(space.master_seed, i);
        auto stack = optics::generate_random_stack(
            {space.lambda0_um, space.n_elem, space.jitter_sigma_um, seed});
        double wp = 0.0;
        double tp = 0.0;
        double en = 0.0;
        auto peaks = match_structure(stack, space.lambda0_um, criteria, &wp, &tp, &en);
        if (!peaks.empty()) {
          s.matched = true;
          s.match = {i, seed, std::move(stack), std::move(peaks), wp, tp, en};
        }
      } catch (const std::exception&) {
        s.failed = true;
      }
      s.done = true;
      if (s.matched && stop_early) {
        std::lock_guard<std::mutex> lock(mu);
        if (++found >= max_matches) {
          // Indices below i may still be running; never cut below them.
          std::size_t cur = limit.load();
          while (i + 1 < cur && !limit.compare_exchange_weak(cur, i + 1)) {
          }
        }
      }
    }
  };
  const std::size_t n = std::max<std::size_t>(1, std::min(workers, budget));
  if (n == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  // Only a prefix of complete slots is reported so the outcome does not
  // depend on scheduling.
  SearchResult out;
  for (std::size_t i = 0; i < budget && slots[i].done; ++i) {
    ++out.examined;
    if (slots[i].failed) ++out.failures;
    if (slots[i].matched) {
      ++out.accepted;
      if (out.matches.size() < max_matches) out.matches.push_back(std::move(slots[i].match));
      if (stop_early && out.matches.size() >= max_matches) break;
    }
  }
  out.acceptance_rate =
      out.examined ? static_cast<double>(out.accepted) / static_cast<double>(out.examined) : 0.0;
  return out;
}

}  // namespace rspdc::ensemble
