#include "rspdc/spdc/io.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <ostream>

#include "rspdc/errors.hpp"
#include "rspdc/format.hpp"

namespace rspdc::spdc {

using nlohmann::json;

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary amplitude files are written in host order, which must be little-endian");

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& in, const std::string& path) {
  T v;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) {
    throw ValidationError(path + ": truncated amplitude file");
  }
  return v;
}

json axis_json(const UniformAxis& a) {
  return {{"start", a.start}, {"step", a.step}, {"count", a.count}};
}

UniformAxis axis_from_json(const json& j) {
  return {j.at("start").get<double>(), j.at("step").get<double>(), j.at("count").get<std::size_t>()};
}

}  // namespace

void write_amplitude_binary(const TwoPhotonAmplitude& tpa, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open " + path + " for writing");
  put<std::uint64_t>(out, tpa.grid.signal.count);
  put<std::uint64_t>(out, tpa.grid.idler.count);
  put(out, tpa.grid.signal.start);
  put(out, tpa.grid.signal.back());
  put(out, tpa.grid.idler.start);
  put(out, tpa.grid.idler.back());
  for (Eigen::Index k = 0; k < tpa.values.rows(); ++k) {
    for (Eigen::Index l = 0; l < tpa.values.cols(); ++l) {
      put(out, tpa.values(k, l).real());
      put(out, tpa.values(k, l).imag());
    }
  }
  if (!out) throw ValidationError("write failed: " + path);
}

json amplitude_sidecar(const TwoPhotonAmplitude& tpa, const json& provenance) {
  return {{"normalization", to_string(tpa.normalization)},
          {"omega_p0_rad_per_fs", tpa.omega_p0},
          {"signal_axis", axis_json(tpa.grid.signal)},
          {"idler_axis", axis_json(tpa.grid.idler)},
          {"coarse_grid", tpa.coarse_grid},
          {"layout", "u64 Ns, u64 Ni, f64 ws_first, ws_last, wi_first, wi_last, row-major (re, im)"},
          {"provenance", provenance}};
}

void write_amplitude(const TwoPhotonAmplitude& tpa, const std::string& base,
                     const json& provenance) {
  write_amplitude_binary(tpa, base + ".bin");
  std::ofstream side(base + ".json");
  if (!side) throw ValidationError("cannot open " + base + ".json for writing");
  side << amplitude_sidecar(tpa, provenance).dump(2) << "\n";
}

TwoPhotonAmplitude read_amplitude(const std::string& base) {
  const std::string bin = base + ".bin";
  const std::string meta = base + ".json";
  std::ifstream side(meta);
  if (!side) throw ValidationError("cannot open " + meta);
  TwoPhotonAmplitude tpa;
  try {
    const json doc = json::parse(side);
    tpa.normalization = normalization_from_string(doc.at("normalization").get<std::string>());
    tpa.omega_p0 = doc.at("omega_p0_rad_per_fs").get<double>();
    tpa.grid.signal = axis_from_json(doc.at("signal_axis"));
    tpa.grid.idler = axis_from_json(doc.at("idler_axis"));
    tpa.coarse_grid = doc.value("coarse_grid", false);
  } catch (const json::exception& e) {
    throw ValidationError(meta + ": " + e.what());
  }
  std::ifstream in(bin, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + bin);
  const auto ns = get<std::uint64_t>(in, bin);
  const auto ni = get<std::uint64_t>(in, bin);
  if (ns != tpa.grid.signal.count || ni != tpa.grid.idler.count) {
    throw ValidationError(bin + ": grid size disagrees with " + meta);
  }
  for (int q = 0; q < 4; ++q) (void)get<double>(in, bin);
  tpa.values.resize(static_cast<Eigen::Index>(ns), static_cast<Eigen::Index>(ni));
  for (Eigen::Index k = 0; k < tpa.values.rows(); ++k) {
    for (Eigen::Index l = 0; l < tpa.values.cols(); ++l) {
      const double re = get<double>(in, bin);
      const double im = get<double>(in, bin);
      tpa.values(k, l) = {re, im};
    }
  }
  return tpa;
}

void write_intensity_csv(const TwoPhotonAmplitude& tpa, std::ostream& out) {
  out << "omega_s_rad_per_fs,omega_i_rad_per_fs,abs2\n";
  for (std::size_t k = 0; k < tpa.grid.signal.count; ++k) {
    for (std::size_t l = 0; l < tpa.grid.idler.count; ++l) {
      out << format_fixed12(tpa.grid.signal.at(k)) << ',' << format_fixed12(tpa.grid.idler.at(l))
          << ','
          << format_fixed12(
                 std::norm(tpa.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l))))
          << '\n';
    }
  }
}

void write_spectrum_csv(const SignalSpectrum& spectrum, std::ostream& out) {
  out << "omega_rad_per_fs,value\n";
  for (std::size_t k = 0; k < spectrum.omega.size(); ++k) {
    out << format_fixed12(spectrum.omega[k]) << ',' << format_fixed12(spectrum.value[k]) << '\n';
  }
}

void write_relative_csv(const RelativeSpectrum& spectrum, std::ostream& out) {
  out << "omega_rad_per_fs,ratio\n";
  for (std::size_t k = 0; k < spectrum.omega.size(); ++k) {
    out << format_fixed12(spectrum.omega[k]) << ',' << format_fixed12(spectrum.ratio[k]) << '\n';
  }
}

}  // namespace rspdc::spdc
