#include "rspdc/ensemble/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "rspdc/errors.hpp"
#include "rspdc/format.hpp"
#include "rspdc/optics/io.hpp"
#include "rspdc/units.hpp"

namespace rspdc::ensemble {

using nlohmann::json;

namespace {

// Non-finite numbers do not survive JSON; store them as strings.
json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double from_num(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
  }
  return j.get<double>();
}

}  // namespace

json config_to_json(const EnsembleConfig& c) {
  json theta = json::array();
  for (double t : c.theta_rad) theta.push_back(rad_to_deg(t));
  return {{"master_seed", c.master_seed},
          {"count", c.count},
          {"n_elem", c.n_elem},
          {"theta_deg", theta},
          {"lambda0_um", c.lambda0_um},
          {"jitter_sigma_um", c.jitter_sigma_um},
          {"band_lo_fraction", c.band_lo_fraction},
          {"band_hi_fraction", c.band_hi_fraction},
          {"bin_edges_nm", c.bin_edges_nm},
          {"floor_fraction", c.floor_fraction},
          {"enhancement", c.enhancement},
          {"enhancement_peaks", c.enhancement_peaks},
          {"pump_duration_fs", c.pump_duration_fs},
          {"first", c.first},
          {"last", c.last},
          {"workers", c.workers},
          {"bootstrap_samples", c.bootstrap_samples}};
}

EnsembleConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("ensemble config must be a JSON object");
  static const std::set<std::string> known = {
      "master_seed", "count",          "n_elem",       "theta_deg",        "lambda0_um",
      "jitter_sigma_um", "band_lo_fraction", "band_hi_fraction", "bin_edges_nm", "floor_fraction",
      "enhancement", "enhancement_peaks", "pump_duration_fs", "first", "last", "workers",
      "bootstrap_samples"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) throw ValidationError("ensemble config: unknown key \"" + key + "\"");
  }
  EnsembleConfig c;
  try {
    c.master_seed = doc.value("master_seed", c.master_seed);
    c.count = doc.value("count", c.count);
    if (doc.contains("n_elem")) c.n_elem = doc.at("n_elem").get<std::vector<std::size_t>>();
    if (doc.contains("theta_deg")) {
      c.theta_rad.clear();
      for (double d : doc.at("theta_deg").get<std::vector<double>>()) c.theta_rad.push_back(deg_to_rad(d));
    }
    c.lambda0_um = doc.value("lambda0_um", c.lambda0_um);
    c.jitter_sigma_um = doc.value("jitter_sigma_um", c.jitter_sigma_um);
    c.band_lo_fraction = doc.value("band_lo_fraction", c.band_lo_fraction);
    c.band_hi_fraction = doc.value("band_hi_fraction", c.band_hi_fraction);
    if (doc.contains("bin_edges_nm")) c.bin_edges_nm = doc.at("bin_edges_nm").get<std::vector<double>>();
    c.floor_fraction = doc.value("floor_fraction", c.floor_fraction);
    c.enhancement = doc.value("enhancement", c.enhancement);
    c.enhancement_peaks = doc.value("enhancement_peaks", c.enhancement_peaks);
    c.pump_duration_fs = doc.value("pump_duration_fs", c.pump_duration_fs);
    c.first = doc.value("first", c.first);
    c.last = doc.value("last", c.last);
    c.workers = doc.value("workers", c.workers);
    c.bootstrap_samples = doc.value("bootstrap_samples", c.bootstrap_samples);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("ensemble config: ") + e.what());
  }
  c.validate();
  return c;
}

json record_to_json(const StructureRecord& r) {
  json cells = json::array();
  for (const auto& c : r.cells) {
    json peaks = json::array();
    for (const auto& p : c.peaks) peaks.push_back({p.omega_c, p.fwhm_nm, p.t_max});
    json cell = {{"theta_deg", rad_to_deg(c.theta_rad)},
                 {"ln_t", num(c.ln_t)},
                 {"optical_length_um", c.optical_length_um},
                 {"dropped", c.dropped},
                 {"peaks", peaks}};
    if (c.enhancement > 0.0) cell["enhancement"] = c.enhancement;
    if (c.failed) cell["error"] = c.error;
    cells.push_back(std::move(cell));
  }
  return {{"index", r.index}, {"n_elem", r.n_elem}, {"seed", r.seed}, {"cells", cells}};
}

StructureRecord record_from_json(const json& doc) {
  StructureRecord r;
  try {
    r.index = doc.at("index").get<std::size_t>();
    r.n_elem = doc.at("n_elem").get<std::size_t>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    for (const auto& c : doc.at("cells")) {
      CellRecord cell;
      cell.theta_rad = deg_to_rad(c.at("theta_deg").get<double>());
      cell.ln_t = from_num(c.at("ln_t"));
      cell.optical_length_um = c.at("optical_length_um").get<double>();
      cell.dropped = c.at("dropped").get<std::size_t>();
      for (const auto& p : c.at("peaks")) {
        cell.peaks.push_back({p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>()});
      }
      cell.enhancement = c.value("enhancement", 0.0);
      if (c.contains("error")) {
        cell.failed = true;
        cell.error = c.at("error").get<std::string>();
      }
      r.cells.push_back(std::move(cell));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("ensemble record: ") + e.what());
  }
  return r;
}

json report_to_json(const EnsembleReport& report) {
  json cells = json::array();
  for (const auto& c : report.cells) {
    cells.push_back({{"n_elem", c.n_elem},
                     {"theta_deg", rad_to_deg(c.theta_rad)},
                     {"structures", c.structures},
                     {"failures", c.failures},
                     {"peaks", c.peaks},
                     {"dropped", c.dropped},
                     {"counts", c.counts},
                     {"probability", c.probability},
                     {"median_fwhm_nm", c.median_fwhm_nm},
                     {"xi_um", num(c.localization.xi_um)},
                     {"xi_stderr_um", num(c.localization.stderr_um)},
                     {"mean_ln_t", c.localization.mean_ln_t},
                     {"excluded", c.localization.excluded},
                     {"max_enhancement", c.max_enhancement},
                     {"max_enhancement_index", c.max_enhancement_index}});
  }
  return {{"config", config_to_json(report.config)},
          {"config_digest", report.config.digest()},
          {"records", report.records.size()},
          {"cells", cells}};
}

void write_records_jsonl(const EnsembleReport& report, std::ostream& out) {
  for (const auto& r : report.records) out << record_to_json(r).dump() << '\n';
}

EnsembleReport read_report(const EnsembleConfig& config, std::istream& records) {
  EnsembleReport report;
  report.config = config;
  std::string line;
  std::size_t n = 0;
  while (std::getline(records, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      report.records.push_back(record_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ValidationError("records line " + std::to_string(n) + ": " + e.what());
    }
  }
  aggregate(report);
  return report;
}

void write_campaign(const EnsembleReport& report, const std::string& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const std::string& name) {
    std::ofstream f(dir + "/" + name);
    if (!f) throw ValidationError("cannot open " + dir + "/" + name + " for writing");
    return f;
  };
  {
    auto f = open("config.json");
    json c = config_to_json(report.config);
    c["digest"] = report.config.digest();
    f << c.dump(2) << '\n';
  }
  {
    auto f = open("records.jsonl");
    write_records_jsonl(report, f);
  }
  {
    auto f = open("report.json");
    f << report_to_json(report).dump(2) << '\n';
  }
}

EnsembleReport read_campaign(const std::string& dir) {
  std::ifstream cf(dir + "/config.json");
  if (!cf) throw ValidationError("cannot open " + dir + "/config.json");
  json c;
  try {
    c = json::parse(cf);
  } catch (const json::exception& e) {
    throw ValidationError(dir + "/config.json: " + e.what());
  }
  const std::string digest = c.value("digest", "");
  c.erase("digest");
  const auto config = config_from_json(c);
  if (!digest.empty() && digest != config.digest()) {
    throw ValidationError(dir + "/config.json: digest mismatch");
  }
  std::ifstream rf(dir + "/records.jsonl");
  if (!rf) throw ValidationError("cannot open " + dir + "/records.jsonl");
  return read_report(config, rf);
}

void write_histogram_csv(const EnsembleReport& report, std::ostream& out) {
  out << "n_elem,theta_deg,bin_lo_nm,bin_hi_nm,count,probability\n";
  const auto& e = report.config.bin_edges_nm;
  for (const auto& c : report.cells) {
    for (std::size_t b = 0; b < c.counts.size(); ++b) {
      const double lo = b == 0 ? 0.0 : e[b - 1];
      const double hi = b < e.size() ? e[b] : std::numeric_limits<double>::infinity();
      out << c.n_elem << ',' << format_fixed12(rad_to_deg(c.theta_rad)) << ',' << format_fixed12(lo)
          << ',' << format_fixed12(hi) << ',' << c.counts[b] << ',' << format_fixed12(c.probability[b])
          << '\n';
    }
  }
}

json search_to_json(const SearchResult& result) {
  json matches = json::array();
  for (const auto& m : result.matches) {
    json peaks = json::array();
    for (const auto& p : m.peaks) {
      peaks.push_back({{"omega_c_rad_per_fs", p.omega_c},
                       {"fwhm_omega_rad_per_fs", p.fwhm_omega},
                       {"fwhm_nm", p.fwhm_nm},
                       {"t_max", p.t_max}});
    }
    matches.push_back({{"index", m.index},
                       {"seed", m.seed},
                       {"omega_p_rad_per_fs", m.omega_p},
                       {"pump_transmittance", m.pump_transmittance},
                       {"enhancement", m.enhancement},
                       {"peaks", peaks}});
  }
  return {{"examined", result.examined},
          {"accepted", result.accepted},
          {"failures", result.failures},
          {"acceptance_rate", result.acceptance_rate},
          {"matches", matches}};
}

}  // namespace rspdc::ensemble
