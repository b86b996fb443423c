#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>

#include "commands.hpp"
#include "rspdc/ensemble/campaign.hpp"
#include "rspdc/ensemble/io.hpp"
#include "rspdc/ensemble/search.hpp"
#include "rspdc/errors.hpp"
#include "rspdc/format.hpp"
#include "rspdc/optics/io.hpp"
#include "rspdc/units.hpp"

namespace rspdc::cli {

using nlohmann::json;

namespace {

void print_cells(const ensemble::EnsembleReport& report) {
  for (const auto& c : report.cells) {
    std::cout << "n_elem " << c.n_elem << " theta_deg " << format_fixed12(rad_to_deg(c.theta_rad))
              << " structures " << c.structures << " peaks " << c.peaks << " median_fwhm_nm "
              << format_fixed12(c.median_fwhm_nm) << " xi_um " << format_fixed12(c.localization.xi_um);
    if (report.config.enhancement && c.theta_rad == 0.0) {
      std::cout << " max_enhancement " << format_fixed12(c.max_enhancement) << " at_index "
                << c.max_enhancement_index;
    }
    std::cout << '\n';
  }
}

}  // namespace

void add_ensemble(CLI::App& app, Global& g) {
  struct Opts {
    ensemble::EnsembleConfig cfg;
    std::vector<double> theta_deg{0.0};
    std::size_t per_decade = 8;
    std::vector<std::string> merge;
    std::string name = "campaign";
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "ensemble",
      "Monte Carlo campaign: FWHM histograms (nm), localization length (um) and optional "
      "enhancement per (n_elem, theta) cell; writes <name>/config.json, records.jsonl, "
      "report.json and histogram.csv");
  sub->add_option("--count", o->cfg.count, "Structures per n_elem");
  sub->add_option("--n-elem", o->cfg.n_elem, "Elementary slots (list)");
  sub->add_option("--theta", o->theta_deg, "External angles in deg (list)");
  sub->add_option("--lambda0", o->cfg.lambda0_um, "Design wavelength (um)");
  sub->add_option("--jitter", o->cfg.jitter_sigma_um, "Boundary jitter (um)");
  sub->add_option("--band-lo", o->cfg.band_lo_fraction, "Lower band edge (fraction of w0)");
  sub->add_option("--band-hi", o->cfg.band_hi_fraction, "Upper band edge (fraction of w0)");
  sub->add_option("--bins-per-decade", o->per_decade, "Log-spaced FWHM bins per decade");
  sub->add_option("--floor", o->cfg.floor_fraction, "Peak floor as a fraction of max T");
  sub->add_flag("--enhancement", o->cfg.enhancement, "Compute the relative spectrum of the best peaks at theta = 0");
  sub->add_option("--enhancement-peaks", o->cfg.enhancement_peaks, "Peaks per structure tried for the enhancement");
  sub->add_option("--pump-duration", o->cfg.pump_duration_fs, "Pump intensity FWHM (fs)");
  sub->add_option("--first", o->cfg.first, "First structure index of this shard");
  sub->add_option("--last", o->cfg.last, "One past the last index of this shard; 0 = count");
  sub->add_option("--bootstrap", o->cfg.bootstrap_samples, "Bootstrap resamples for xi");
  sub->add_option("--merge", o->merge, "Merge these campaign directories instead of running");
  sub->add_option("--name", o->name, "Campaign directory inside --out");
  sub->callback([o, sub, &g] {
    ensemble::EnsembleReport report;
    if (!o->merge.empty()) {
      report = ensemble::read_campaign(o->merge.front());
      for (std::size_t i = 1; i < o->merge.size(); ++i) {
        report = ensemble::merge_reports(report, ensemble::read_campaign(o->merge[i]));
      }
    } else {
      auto cfg = o->cfg;
      cfg.master_seed = g.seed;
      cfg.workers = g.threads;
      cfg.theta_rad.clear();
      for (double t : o->theta_deg) cfg.theta_rad.push_back(deg_to_rad(t));
      cfg.bin_edges_nm = ensemble::EnsembleConfig::default_bins(o->per_decade);
      cfg.validate();
      report = ensemble::run_campaign(cfg);
    }
    const auto dir = output_path(g, o->name);
    ensemble::write_campaign(report, dir.string());
    write_text(dir / "histogram.csv", [&](std::ostream& out) { ensemble::write_histogram_csv(report, out); });
    print_cells(report);
    print_value("digest", report.config.digest());
    print_value("campaign", dir.string());
    std::vector<std::string> inputs;
    for (const auto& m : o->merge) inputs.push_back(m + "/records.jsonl");
    echo_provenance(provenance(g, *sub, inputs));
  });
}

void add_search(CLI::App& app, Global& g) {
  struct Opts {
    ensemble::GeneratorSpace space;
    ensemble::SearchCriteria crit;
    std::string mode = "degenerate";
    double theta_deg = 0.0;
    std::size_t budget = 2000;
    std::size_t max_matches = 1;
    bool full = false;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "search",
      "Scan generated structures for a single high-Q degenerate peak or a two-peak pair with "
      "a FWHM ratio near the target; writes search.json and match_<index>.json stacks");
  sub->add_option("--mode", o->mode, "degenerate or two-peak")->check(CLI::IsMember({"degenerate", "two-peak"}));
  sub->add_option("--budget", o->budget, "Structures to examine");
  sub->add_option("--max-matches", o->max_matches, "Matches to keep");
  sub->add_flag("--full", o->full, "Examine the whole budget (for the acceptance rate)");
  sub->add_option("--n-elem", o->space.n_elem, "Elementary slots");
  sub->add_option("--lambda0", o->space.lambda0_um, "Design wavelength (um)");
  sub->add_option("--jitter", o->space.jitter_sigma_um, "Boundary jitter (um)");
  sub->add_option("--theta", o->theta_deg, "External angle (deg)");
  sub->add_option("--min-t", o->crit.min_t_max, "Minimum peak transmittance");
  sub->add_option("--ratio", o->crit.ratio_target, "Two-peak FWHM ratio target");
  sub->add_option("--ratio-tolerance", o->crit.ratio_tolerance, "Relative tolerance on the ratio");
  sub->add_option("--pump-floor", o->crit.pump_floor, "Minimum stack transmittance at the pump");
  sub->add_option("--band-lo", o->crit.band_lo_fraction, "Lower band edge (fraction of w0)");
  sub->add_option("--band-hi", o->crit.band_hi_fraction, "Upper band edge (fraction of w0)");
  sub->add_option("--min-enhancement", o->crit.min_enhancement,
                  "Degenerate mode: minimum relative spectrum at the peak (0 = off)");
  sub->add_option("--pump-duration", o->crit.pump_duration_fs, "Pump intensity FWHM (fs)");
  sub->callback([o, sub, &g] {
    auto space = o->space;
    space.master_seed = g.seed;
    auto crit = o->crit;
    crit.mode = o->mode == "degenerate" ? ensemble::SearchMode::Degenerate : ensemble::SearchMode::TwoPeak;
    crit.theta_rad = deg_to_rad(o->theta_deg);
    crit.validate();
    const auto res = ensemble::search_structures(space, crit, o->budget, o->max_matches, !o->full, g.threads);
    auto doc = ensemble::search_to_json(res);
    for (const auto& m : res.matches) {
      const auto p = output_path(g, "match_" + std::to_string(m.index) + ".json");
      optics::write_stack(m.stack, p.string());
      std::cout << "match index " << m.index << " omega_c " << format_fixed12(m.peaks.front().omega_c)
                << " fwhm_nm " << format_fixed12(m.peaks.front().fwhm_nm) << " stack " << p.string() << '\n';
    }
    const auto prov = provenance(g, *sub, {});
    doc["provenance"] = prov;
    write_json(output_path(g, "search.json"), doc);
    print_value("examined", std::to_string(res.examined));
    print_value("accepted", std::to_string(res.accepted));
    print_value("acceptance_rate", res.acceptance_rate);
    if (res.matches.empty()) std::cout << "no structure met the criteria within the budget\n";
    echo_provenance(prov);
  });
}

}  // namespace rspdc::cli
