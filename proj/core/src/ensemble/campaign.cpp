#include "rspdc/ensemble/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <thread>

#include "rspdc/ensemble/io.hpp"
#include "rspdc/ensemble/seed.hpp"
#include "rspdc/errors.hpp"
#include "rspdc/format.hpp"
#include "rspdc/optics/generator.hpp"
#include "rspdc/optics/peaks.hpp"
#include "rspdc/optics/transfer_matrix.hpp"
#include "rspdc/spdc/observables.hpp"
#include "rspdc/units.hpp"

namespace rspdc::ensemble {

namespace {

bool same_config(const EnsembleConfig& a, const EnsembleConfig& b) { return a.digest() == b.digest(); }

}  // namespace

double peak_enhancement(const optics::LayerStack& stack, const optics::Peak& peak,
                        double pump_duration_fs) {
  spdc::PumpConfig pump;
  pump.omega_p0 = 2.0 * peak.omega_c;
  pump.duration_fwhm_fs = pump_duration_fs;
  spdc::AmplitudeModel model(stack, pump, {});
  const auto idler = spdc::peak_idler_samples(peak.omega_c, peak.fwhm_omega, pump_duration_fs);
  return spdc::relative_spectrum_at(model, peak.omega_c, idler);
}

std::vector<double> EnsembleConfig::default_bins(std::size_t per_decade) {
  // 1e-3 .. 10 nm
  std::vector<double> edges;
  const std::size_t n = 4 * per_decade;
  for (std::size_t k = 0; k <= n; ++k) {
    edges.push_back(std::pow(10.0, -3.0 + 4.0 * static_cast<double>(k) / static_cast<double>(n)));
  }
  return edges;
}

void EnsembleConfig::validate() const {
  if (count < 1) throw ValidationError("ensemble count must be >= 1");
  if (n_elem.empty()) throw ValidationError("ensemble needs at least one n_elem");
  for (auto n : n_elem) {
    if (n < 1) throw ValidationError("n_elem must be >= 1");
  }
  if (theta_rad.empty()) throw ValidationError("ensemble needs at least one angle");
  for (double t : theta_rad) {
    if (!(std::abs(std::sin(t)) < 1.0)) throw DomainError("ensemble angle must be below 90 deg");
  }
  optics::GeneratorParams g{lambda0_um, n_elem.front(), jitter_sigma_um, 0};
  g.validate();
  if (!(band_lo_fraction > 0.0) || !(band_hi_fraction > band_lo_fraction)) {
    throw ValidationError("probe band must satisfy 0 < lo < hi");
  }
  if (bin_edges_nm.size() < 2) throw ValidationError("need at least two bin edges");
  for (std::size_t k = 1; k < bin_edges_nm.size(); ++k) {
    if (!(bin_edges_nm[k] > bin_edges_nm[k - 1])) {
      throw ValidationError("bin edges must be strictly increasing");
    }
  }
  if (!(bin_edges_nm.front() > 0.0)) throw ValidationError("bin edges must be positive");
  if (shard_end() > count || first > shard_end()) throw ValidationError("shard range outside [0, count]");
  if (workers < 1) throw ValidationError("workers must be >= 1");
  if (!(pump_duration_fs > 0.0)) throw ValidationError("pump duration must be positive");
}

std::string EnsembleConfig::digest() const {
  EnsembleConfig c = *this;
  c.first = 0;
  c.last = 0;
  c.workers = 1;
  return digest_hex(config_to_json(c).dump());
}

StructureRecord evaluate_structure(const EnsembleConfig& config, std::size_t n_elem,
                                   std::size_t index) {
  StructureRecord rec;
  rec.index = index;
  rec.n_elem = n_elem;
  rec.seed = derive_seed(config.master_seed, index);
  const double w0 = omega_from_wavelength(config.lambda0_um);
  optics::LayerStack stack;
  std::string gen_error;
  try {
    stack = optics::generate_random_stack({config.lambda0_um, n_elem, config.jitter_sigma_um, rec.seed});
  } catch (const std::exception& e) {
    gen_error = e.what();
  }
  for (double theta : config.theta_rad) {
    CellRecord cell;
    cell.theta_rad = theta;
    if (!gen_error.empty()) {
      cell.failed = true;
      cell.error = gen_error;
      rec.cells.push_back(std::move(cell));
      continue;
    }
    try {
      const double s = std::sin(theta);
      const double t = std::norm(optics::transmission_amplitude(optics::resolve(stack, w0), w0, s));
      cell.ln_t = t > 0.0 ? std::log(t) : -std::numeric_limits<double>::infinity();
      cell.optical_length_um = stack.optical_length(w0);
      optics::ScanOptions opts;
      opts.floor_fraction = config.floor_fraction;
      const auto found = optics::scan_peaks(stack, w0 * config.band_lo_fraction,
                                            w0 * config.band_hi_fraction, theta, opts);
      cell.dropped = found.dropped;
      for (const auto& p : found.peaks) cell.peaks.push_back({p.omega_c, p.fwhm_nm, p.t_max});

      if (config.enhancement && theta == 0.0 && !found.peaks.empty()) {
        std::vector<optics::Peak> best = found.peaks;
        std::sort(best.begin(), best.end(), [](const optics::Peak& a, const optics::Peak& b) {
          return a.t_max > b.t_max || (a.t_max == b.t_max && a.omega_c < b.omega_c);
        });
        best.resize(std::min(best.size(), config.enhancement_peaks));
        for (const auto& p : best) {
          cell.enhancement =
              std::max(cell.enhancement, peak_enhancement(stack, p, config.pump_duration_fs));
        }
      }
    } catch (const std::exception& e) {
      cell.failed = true;
      cell.error = e.what();
      cell.peaks.clear();
    }
    rec.cells.push_back(std::move(cell));
  }
  return rec;
}

void aggregate(EnsembleReport& report) {
  const auto& cfg = report.config;
  std::sort(report.records.begin(), report.records.end(),
            [](const StructureRecord& a, const StructureRecord& b) {
              return a.n_elem != b.n_elem ? a.n_elem < b.n_elem : a.index < b.index;
            });
  report.cells.clear();
  const std::size_t nb = cfg.bin_edges_nm.size() + 1;
  for (std::size_t n : cfg.n_elem) {
    for (std::size_t c = 0; c < cfg.theta_rad.size(); ++c) {
      CellReport cell;
      cell.n_elem = n;
      cell.theta_rad = cfg.theta_rad[c];
      cell.counts.assign(nb, 0);
      std::vector<double> widths;
      std::vector<double> ln_t;
      std::vector<double> l_opt;
      for (const auto& rec : report.records) {
        if (rec.n_elem != n) continue;
        const CellRecord& cr = rec.cells.at(c);
        ++cell.structures;
        if (cr.failed) {
          ++cell.failures;
          continue;
        }
        cell.dropped += cr.dropped;
        for (const auto& p : cr.peaks) {
          widths.push_back(p.fwhm_nm);
          const auto it = std::upper_bound(cfg.bin_edges_nm.begin(), cfg.bin_edges_nm.end(), p.fwhm_nm);
          std::size_t bin = static_cast<std::size_t>(it - cfg.bin_edges_nm.begin());
          // The last edge is inclusive.
          if (bin == cfg.bin_edges_nm.size() && p.fwhm_nm == cfg.bin_edges_nm.back()) --bin;
          ++cell.counts[bin];
        }
        ln_t.push_back(cr.ln_t);
        l_opt.push_back(cr.optical_length_um);
        if (cr.enhancement > cell.max_enhancement) {
          cell.max_enhancement = cr.enhancement;
          cell.max_enhancement_index = rec.index;
        }
      }
      cell.peaks = widths.size();
      cell.probability.assign(nb, 0.0);
      if (cell.peaks > 0) {
        for (std::size_t b = 0; b < nb; ++b) {
          cell.probability[b] = static_cast<double>(cell.counts[b]) / static_cast<double>(cell.peaks);
        }
        std::sort(widths.begin(), widths.end());
        const std::size_t m = widths.size();
        cell.median_fwhm_nm = m % 2 ? widths[m / 2] : 0.5 * (widths[m / 2 - 1] + widths[m / 2]);
      }
      if (!ln_t.empty()) {
        try {
          cell.localization = optics::estimate_localization(
              ln_t, l_opt, cfg.bootstrap_samples, derive_seed(cfg.master_seed ^ n, c));
        } catch (const NumericalError&) {
          cell.localization.excluded = ln_t.size();
        }
      }
      report.cells.push_back(std::move(cell));
    }
  }
}

EnsembleReport run_campaign(const EnsembleConfig& config) {
  config.validate();
  const std::size_t begin = config.first;
  const std::size_t end = config.shard_end();
  const std::size_t per = end - begin;
  const std::size_t total = per * config.n_elem.size();

  EnsembleReport report;
  report.config = config;
  report.records.resize(total);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t job = next++; job < total; job = next++) {
      const std::size_t n = config.n_elem[job / per];
      const std::size_t index = begin + job % per;
      report.records[job] = evaluate_structure(config, n, index);
    }
  };
  const std::size_t workers = std::min<std::size_t>(config.workers, std::max<std::size_t>(total, 1));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  aggregate(report);
  return report;
}

EnsembleReport merge_reports(const EnsembleReport& a, const EnsembleReport& b) {
  if (!same_config(a.config, b.config)) {
    throw ValidationError("merge_reports: incompatible campaign configurations (digest " +
                          a.config.digest() + " vs " + b.config.digest() + ")");
  }
  EnsembleReport out;
  out.config = a.config;
  out.config.first = 0;
  out.config.last = 0;
  std::map<std::pair<std::size_t, std::size_t>, const StructureRecord*> seen;
  for (const auto* rep : {&a, &b}) {
    for (const auto& rec : rep->records) {
      const auto key = std::make_pair(rec.n_elem, rec.index);
      auto [it, inserted] = seen.emplace(key, &rec);
      if (!inserted) {
        if (record_to_json(*it->second) != record_to_json(rec)) {
          throw ValidationError("merge_reports: conflicting records for index " +
                                std::to_string(rec.index));
        }
        continue;
      }
      out.records.push_back(rec);
    }
  }
  aggregate(out);
  return out;
}

}  // namespace rspdc::ensemble
