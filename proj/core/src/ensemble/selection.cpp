#include "rspdc/ensemble/selection.hpp"

#include <algorithm>
#include <cmath>

#include "rspdc/errors.hpp"

namespace rspdc::ensemble {

std::optional<SearchMatch> select_degenerate(const GeneratorSpace& space, std::size_t budget,
                                             double min_enhancement, std::size_t workers) {
  SearchCriteria crit;
  crit.mode = SearchMode::Degenerate;
  crit.min_enhancement = min_enhancement;
  auto res = search_structures(space, crit, budget, 1, true, workers);
  if (res.matches.empty()) return std::nullopt;
  return std::move(res.matches.front());
}

std::optional<SearchMatch> select_two_peak(const GeneratorSpace& space, std::size_t budget,
                                           std::size_t max_samples, std::size_t workers) {
  SearchCriteria crit;
  crit.mode = SearchMode::TwoPeak;
  // Grow the match count until one fits; the search itself is prefix-ordered.
  for (std::size_t want = 8;; want *= 2) {
    auto res = search_structures(space, crit, budget, want, true, workers);
    for (auto& m : res.matches) {
      const auto grid = spdc::FrequencyGrid::covering(m.peaks[0], m.peaks[1]);
      if (grid.signal.count <= max_samples) return std::move(m);
    }
    if (res.matches.size() < want) return std::nullopt;
  }
}

PinholeLayout pinhole_layout(const optics::Peak& peak, double spacing_fwhm, double half_width_fwhm,
                             std::size_t samples) {
  if (!(peak.fwhm_omega > 0.0) || !(spacing_fwhm > 0.0) || !(half_width_fwhm > 0.0)) {
    throw ValidationError("pinhole layout needs positive widths");
  }
  PinholeLayout out;
  out.grid = spdc::FrequencyGrid::square_around(peak.omega_c, half_width_fwhm * peak.fwhm_omega, samples);
  const double step = out.grid.signal.step;
  out.delta_omega = std::max(1.0, std::round(spacing_fwhm * peak.fwhm_omega / step)) * step;
  return out;
}

}  // namespace rspdc::ensemble
