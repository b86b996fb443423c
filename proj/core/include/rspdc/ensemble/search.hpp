#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rspdc/optics/layer_stack.hpp"
#include "rspdc/optics/peaks.hpp"

namespace rspdc::ensemble {

enum class SearchMode { Degenerate, TwoPeak };

struct SearchCriteria {
  SearchMode mode = SearchMode::Degenerate;
  double min_t_max = 0.9;
  /// Two-peak mode: wider / narrower FWHM within ratio * (1 +- tolerance).
  double ratio_target = 4.0;
  double ratio_tolerance = 0.5;
  /// Stack transmittance required at the pump frequency (normal incidence).
  double pump_floor = 0.1;
  double theta_rad = 0.0;
  /// Signal/idler peaks must lie in this band (fractions of w0).
  double band_lo_fraction = 0.95;
  double band_hi_fraction = 1.05;
  /// Degenerate mode: minimum collinear relative spectrum at the peak
  /// centre (0 disables the test).
  double min_enhancement = 0.0;
  double pump_duration_fs = 250.0;

  void validate() const;
};

struct GeneratorSpace {
  std::uint64_t master_seed = 1;
  std::size_t n_elem = 250;
  double lambda0_um = 1.0;
  double jitter_sigma_um = 0.025;
};

struct SearchMatch {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  optics::LayerStack stack;
  /// Degenerate: one peak. Two-peak: signal (wider) then idler (narrower).
  std::vector<optics::Peak> peaks;
  double omega_p = 0.0;
  double pump_transmittance = 0.0;
  /// Relative spectrum at the peak (degenerate mode with min_enhancement only).
  double enhancement = 0.0;
};

struct SearchResult {
  std::vector<SearchMatch> matches;
  std::size_t examined = 0;
  std::size_t accepted = 0;  // structures meeting the criteria (>= matches.size())
  std::size_t failures = 0;
  double acceptance_rate = 0.0;
};

/// Streams structures index = 0, 1, ... < budget through peak analysis.
/// Keeps the first `max_matches` matching structures (in index order) but
/// examines the whole budget unless stop_early is set, so the acceptance
/// rate covers every examined structure.
SearchResult search_structures(const GeneratorSpace& space, const SearchCriteria& criteria,
                               std::size_t budget, std::size_t max_matches = 1,
                               bool stop_early = true, std::size_t workers = 1);

/// Criteria test for a single stack; returns the matched peaks (empty if none).
std::vector<optics::Peak> match_structure(const optics::LayerStack& stack, double lambda0_um,
                                          const SearchCriteria& criteria, double* omega_p = nullptr,
                                          double* pump_t = nullptr,
                                          double* enhancement = nullptr);

}  // namespace rspdc::ensemble
