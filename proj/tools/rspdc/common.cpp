#include "common.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <set>
#include <sstream>

#include "rspdc/errors.hpp"
#include "rspdc/format.hpp"
#include "rspdc/optics/generator.hpp"
#include "rspdc/optics/io.hpp"
#include "rspdc/units.hpp"
#include "rspdc/version.hpp"

namespace rspdc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

void StackSource::add_options(CLI::App& sub) {
  sub.add_option("--stack", path, "Stack JSON file; generated from --seed when omitted");
  sub.add_option("--n-elem", n_elem, "Elementary quarter-wave slots of a generated stack");
  sub.add_option("--lambda0", lambda0_um, "Design wavelength (um)");
  sub.add_option("--jitter", jitter_um, "Optical-length boundary jitter, standard deviation (um)");
}

optics::LayerStack StackSource::load(const Global& g) const {
  if (!path.empty()) return optics::read_stack(path);
  return optics::generate_random_stack({lambda0_um, n_elem, jitter_um, g.seed});
}

std::vector<std::string> StackSource::inputs() const {
  if (path.empty()) return {};
  return {path};
}

void PumpOptions::add_options(CLI::App& sub) {
  sub.add_option("--pump-duration", duration_fs, "Pump pulse intensity FWHM (fs)");
  sub.add_option("--pump-amplitude", amplitude_v_per_um, "Peak pump field (V/um)");
  sub.add_option("--beam-diameter", beam_diameter_um, "Pump beam diameter (um); 0 = plane wave");
}

spdc::PumpConfig PumpOptions::config(double omega_p0) const {
  spdc::PumpConfig p;
  p.omega_p0 = omega_p0;
  p.duration_fwhm_fs = duration_fs;
  p.amplitude_v_per_um = amplitude_v_per_um;
  p.beam_diameter_um = beam_diameter_um > 0.0 ? beam_diameter_um : std::numeric_limits<double>::infinity();
  p.validate();
  return p;
}

fs::path output_path(const Global& g, const std::string& name) {
  fs::path dir(g.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir / name;
}

namespace {

// Floats carry 12 significant digits so reruns are byte-identical.
json rounded(const json& doc) {
  if (doc.is_number_float()) return round12(doc.get<double>());
  if (doc.is_array() || doc.is_object()) {
    json out = doc;
    for (auto it = out.begin(); it != out.end(); ++it) *it = rounded(*it);
    return out;
  }
  return doc;
}

}  // namespace

void write_json(const fs::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << rounded(doc).dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_text(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  body(out);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

json provenance(const Global& g, const CLI::App& sub, const std::vector<std::string>& input_files) {
  std::string bytes = sub.get_name() + '\n' + sub.config_to_str(true, false);
  bytes += "seed=" + std::to_string(g.seed) + '\n';
  for (const auto& f : input_files) {
    std::ifstream in(f, std::ios::binary);
    if (!in) throw ValidationError("cannot read input " + f);
    bytes.append(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return json{{"tool", "rspdc"},
              {"version", kVersion},
              {"command", sub.get_name()},
              {"seed", g.seed},
              {"inputs_digest", digest_hex(bytes)}};
}

void echo_provenance(const json& prov) { std::cout << "provenance: " << prov.dump() << '\n'; }

void print_value(const std::string& key, double value) {
  std::cout << key << ": " << format_fixed12(value) << '\n';
}

void print_value(const std::string& key, const std::string& value) {
  std::cout << key << ": " << value << '\n';
}

optics::Peak locate_peak(const optics::LayerStack& stack, double theta_rad, double omega,
                         double band_lo, double band_hi) {
  const double w0 = omega_from_wavelength(stack.provenance().lambda0_um);
  const auto found = optics::scan_peaks(stack, w0 * band_lo, w0 * band_hi, theta_rad);
  if (found.peaks.empty()) throw DomainError("no transmission peak in the probe band");
  const optics::Peak* best = &found.peaks.front();
  for (const auto& p : found.peaks) {
    if (omega > 0.0) {
      if (std::abs(p.omega_c - omega) < std::abs(best->omega_c - omega)) best = &p;
    } else if (p.t_max > best->t_max) {
      best = &p;
    }
  }
  return *best;
}

namespace {

std::string json_scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  throw ValidationError("config value " + v.dump() + " is not a scalar");
}

bool on_command_line(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

}  // namespace

std::vector<std::string> merge_config(CLI::App& app, const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ValidationError("config " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config " + path + " must be a JSON object");

  std::size_t sub_pos = args.size();
  CLI::App* sub = nullptr;
  for (std::size_t i = 0; i < args.size() && !sub; ++i) {
    for (CLI::App* s : app.get_subcommands([](CLI::App*) { return true; })) {
      if (s->get_name() == args[i]) {
        sub = s;
        sub_pos = i;
        break;
      }
    }
  }
  if (!sub) throw ValidationError("config given without a sub-command");

  std::set<std::string> known;
  auto collect = [&](CLI::App& a) {
    for (const CLI::Option* o : a.get_options()) {
      for (const auto& n : o->get_lnames()) known.insert(n);
    }
  };
  collect(*sub);
  collect(app);
  known.erase("help");
  known.erase("config");

  std::vector<std::string> extra;
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) throw ValidationError("config " + path + ": unknown key \"" + key + "\"");
    const std::string flag = "--" + key;
    if (on_command_line(args, flag)) continue;
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    if (!opt) opt = app.get_option_no_throw(flag);
    if (opt && opt->get_type_size_max() == 0) {
      if (!value.is_boolean()) throw ValidationError("config key \"" + key + "\" expects true/false");
      if (value.get<bool>()) extra.push_back(flag);
      continue;
    }
    extra.push_back(flag);
    if (value.is_array()) {
      if (value.empty()) throw ValidationError("config key \"" + key + "\" has an empty list");
      for (const auto& v : value) extra.push_back(json_scalar(v));
    } else {
      extra.push_back(json_scalar(value));
    }
  }
  std::vector<std::string> out(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1);
  out.insert(out.end(), extra.begin(), extra.end());
  out.insert(out.end(), args.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1, args.end());
  return out;
}

}  // namespace rspdc::cli
