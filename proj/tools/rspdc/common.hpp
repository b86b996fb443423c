#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rspdc/optics/layer_stack.hpp"
#include "rspdc/optics/peaks.hpp"
#include "rspdc/spdc/amplitude.hpp"

namespace rspdc::cli {

struct Global {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  std::size_t threads = 1;
};

/// Where a command reads its structure from: a stack file, or the random
/// generator driven by --seed.
struct StackSource {
  std::string path;
  std::size_t n_elem = 250;
  double lambda0_um = 1.0;
  double jitter_um = 0.025;

  void add_options(CLI::App& sub);
  optics::LayerStack load(const Global& g) const;
  std::vector<std::string> inputs() const;
};

struct PumpOptions {
  double duration_fs = 250.0;
  double amplitude_v_per_um = 1.0;
  double beam_diameter_um = 0.0;  // 0 = plane wave

  void add_options(CLI::App& sub);
  spdc::PumpConfig config(double omega_p0) const;
};

std::filesystem::path output_path(const Global& g, const std::string& name);
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);
void write_text(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body);

/// Inputs digest over the sub-command's resolved options and the bytes of
/// every input file, plus seed and version.
nlohmann::json provenance(const Global& g, const CLI::App& sub,
                          const std::vector<std::string>& input_files);
/// Prints "provenance: {...}" on stdout.
void echo_provenance(const nlohmann::json& prov);

void print_value(const std::string& key, double value);
void print_value(const std::string& key, const std::string& value);

/// Peak of the stack nearest to `omega` (tallest in the band when omega is 0).
optics::Peak locate_peak(const optics::LayerStack& stack, double theta_rad, double omega,
                         double band_lo = 0.95, double band_hi = 1.05);

/// Rewrites argv so keys of the --config JSON become options of the chosen
/// sub-command. Keys already present on the command line are left out so
/// the command line wins. Unknown keys raise ValidationError.
std::vector<std::string> merge_config(CLI::App& app, const std::vector<std::string>& args);

}  // namespace rspdc::cli
