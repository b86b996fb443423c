#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rspdc/optics/layer_stack.hpp"
#include "rspdc/optics/localization.hpp"
#include "rspdc/optics/peaks.hpp"

namespace rspdc::ensemble {

/// Monte Carlo campaign over random stacks.
///
/// Every (n_elem, index) pair is an independent structure seeded from
/// (master_seed, index); each one is scanned at every angle in `theta_rad`.
struct EnsembleConfig {
  std::uint64_t master_seed = 1;
  std::size_t count = 2000;
  std::vector<std::size_t> n_elem{250};
  std::vector<double> theta_rad{0.0};
  double lambda0_um = 1.0;
  double jitter_sigma_um = 0.025;
  /// Probe band as fractions of w0 = 2 pi c / lambda0.
  double band_lo_fraction = 0.95;
  double band_hi_fraction = 1.05;
  /// Log-spaced FWHM bin edges in nm (strictly increasing).
  std::vector<double> bin_edges_nm = default_bins();
  double floor_fraction = 0.01;
  /// Relative-spectrum enhancement of the best peaks (collinear cells only).
  bool enhancement = false;
  std::size_t enhancement_peaks = 3;
  double pump_duration_fs = 250.0;
  /// Shard: indices [first, last) of [0, count). last = 0 means count.
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t workers = 1;
  std::size_t bootstrap_samples = 200;

  static std::vector<double> default_bins(std::size_t per_decade = 8);
  void validate() const;
  std::size_t shard_end() const { return last == 0 ? count : last; }
  /// Digest over every field that affects per-structure results and bins
  /// (shard bounds and worker count excluded).
  std::string digest() const;
};

struct PeakRecord {
  double omega_c = 0.0;
  double fwhm_nm = 0.0;
  double t_max = 0.0;
};

struct CellRecord {
  double theta_rad = 0.0;
  std::vector<PeakRecord> peaks;
  std::size_t dropped = 0;
  double ln_t = 0.0;              // ln T at w0
  double optical_length_um = 0.0;
  double enhancement = 0.0;       // max relative spectrum, 0 when not computed
  bool failed = false;
  std::string error;
};

struct StructureRecord {
  std::size_t index = 0;
  std::size_t n_elem = 0;
  std::uint64_t seed = 0;
  std::vector<CellRecord> cells;  // one per theta, config order
};

struct CellReport {
  std::size_t n_elem = 0;
  double theta_rad = 0.0;
  std::size_t structures = 0;
  std::size_t failures = 0;
  std::size_t peaks = 0;        // measured widths
  std::size_t dropped = 0;      // maxima without bracketed half-max points
  /// counts[0] below the first edge, counts.back() above the last one.
  std::vector<std::size_t> counts;
  std::vector<double> probability;
  double median_fwhm_nm = 0.0;
  optics::LocalizationEstimate localization;
  double max_enhancement = 0.0;
  std::size_t max_enhancement_index = 0;
};

struct EnsembleReport {
  EnsembleConfig config;
  std::vector<StructureRecord> records;  // sorted by (n_elem, index)
  std::vector<CellReport> cells;         // n_elem-major, then theta
};

/// Generates, scans and aggregates the configured shard. Per-structure
/// failures are recorded in their CellRecord and never abort the run.
EnsembleReport run_campaign(const EnsembleConfig& config);

/// Union of the records of two compatible reports, re-aggregated. Throws
/// ValidationError if the configs differ in anything but the shard range
/// and worker count, or if both contain the same structure with different
/// contents.
EnsembleReport merge_reports(const EnsembleReport& a, const EnsembleReport& b);

/// Recomputes `cells` from `records`.
void aggregate(EnsembleReport& report);

/// Evaluates one structure (all cells). Exposed for testing.
StructureRecord evaluate_structure(const EnsembleConfig& config, std::size_t n_elem,
                                   std::size_t index);

/// Collinear relative spectrum at the centre of a degenerate peak, pumped at
/// twice its frequency.
double peak_enhancement(const optics::LayerStack& stack, const optics::Peak& peak,
                        double pump_duration_fs = 250.0);

}  // namespace rspdc::ensemble
