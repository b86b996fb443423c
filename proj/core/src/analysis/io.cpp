#include "rspdc/analysis/io.hpp"

#include <fstream>
#include <ostream>

#include "rspdc/errors.hpp"
#include "rspdc/format.hpp"

namespace rspdc::analysis {

using nlohmann::json;

json write_schmidt(const SchmidtResult& schmidt, const std::string& base, std::size_t modes) {
  json doc;
  json weights = json::array();
  json amps = json::array();
  for (std::size_t n = 0; n < schmidt.rank(); ++n) {
    weights.push_back(round12(schmidt.weights[n]));
    amps.push_back(round12(schmidt.amplitudes[n]));
  }
  doc["weights"] = weights;
  doc["amplitudes"] = amps;
  doc["entropy_bits"] = round12(entropy(schmidt));
  doc["cooperativity"] = round12(cooperativity(schmidt));
  doc["rank"] = schmidt.rank();
  json files = json::array();
  const std::size_t keep = std::min(modes, static_cast<std::size_t>(schmidt.signal_modes.cols()));
  for (std::size_t n = 0; n < keep; ++n) {
    const std::string path = base + "_mode" + std::to_string(n + 1) + ".csv";
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open " + path + " for writing");
    out << "omega_s_rad_per_fs,re_fs,im_fs,omega_i_rad_per_fs,re_fi,im_fi\n";
    const std::size_t rows = std::max(schmidt.signal_axis.count, schmidt.idler_axis.count);
    for (std::size_t k = 0; k < rows; ++k) {
      const auto c = static_cast<Eigen::Index>(n);
      if (k < schmidt.signal_axis.count) {
        const auto v = schmidt.signal_modes(static_cast<Eigen::Index>(k), c);
        out << format_fixed12(schmidt.signal_axis.at(k)) << ',' << format_fixed12(v.real()) << ','
            << format_fixed12(v.imag());
      } else {
        out << ",,";
      }
      out << ',';
      if (k < schmidt.idler_axis.count) {
        const auto v = schmidt.idler_modes(static_cast<Eigen::Index>(k), c);
        out << format_fixed12(schmidt.idler_axis.at(k)) << ',' << format_fixed12(v.real()) << ','
            << format_fixed12(v.imag());
      } else {
        out << ",,";
      }
      out << '\n';
    }
    files.push_back(path);
  }
  doc["mode_files"] = files;
  std::ofstream out(base + ".json");
  if (!out) throw ValidationError("cannot open " + base + ".json for writing");
  out << doc.dump(2) << "\n";
  return doc;
}

void write_hom_csv(const HomPattern& pattern, std::ostream& out) {
  out << "tau_fs,rate\n";
  for (std::size_t a = 0; a < pattern.tau.size(); ++a) {
    out << format_fixed12(pattern.tau[a]) << ',' << format_fixed12(pattern.rate[a]) << '\n';
  }
}

void write_franson_csv(const FransonPattern& pattern, std::ostream& out) {
  out << "tau_s_fs,tau_i_fs,rate\n";
  for (std::size_t a = 0; a < pattern.tau_s.size(); ++a) {
    for (std::size_t b = 0; b < pattern.tau_i.size(); ++b) {
      out << format_fixed12(pattern.tau_s[a]) << ',' << format_fixed12(pattern.tau_i[b]) << ','
          << format_fixed12(pattern.rate(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)))
          << '\n';
    }
  }
}

void write_temporal_csv(const TemporalAmplitude& temporal, std::ostream& out, std::size_t stride) {
  if (stride == 0) stride = 1;
  out << "t_s_fs,t_i_fs,abs2\n";
  for (std::size_t m = 0; m < temporal.ts.count; m += stride) {
    for (std::size_t n = 0; n < temporal.ti.count; n += stride) {
      out << format_fixed12(temporal.ts.at(m)) << ',' << format_fixed12(temporal.ti.at(n)) << ','
          << format_fixed12(std::norm(
                 temporal.values(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n))))
          << '\n';
    }
  }
}

void write_flux_csv(const FluxSeries& flux, std::ostream& out) {
  out << "t_fs,flux\n";
  for (std::size_t k = 0; k < flux.t.size(); ++k) {
    out << format_fixed12(flux.t[k]) << ',' << format_fixed12(flux.flux[k]) << '\n';
  }
}

}  // namespace rspdc::analysis
