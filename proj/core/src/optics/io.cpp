#include "rspdc/optics/io.hpp"

#include <fstream>
#include <ostream>

#include "rspdc/errors.hpp"
#include "rspdc/format.hpp"

namespace rspdc::optics {

using nlohmann::json;

json stack_to_json(const LayerStack& stack) {
  const auto& prov = stack.provenance();
  json layers = json::array();
  for (std::size_t i = 0; i < stack.size(); ++i) {
    layers.push_back({{"material", stack.material_of(i).id},
                      {"thickness_um", round12(stack.layers()[i].thickness_um)}});
  }
  return json{{"lambda0_um", prov.lambda0_um},
              {"seed", prov.seed},
              {"n_elem", prov.n_elem},
              {"jitter_sigma_um", prov.jitter_sigma_um},
              {"resamples", prov.resamples},
              {"layers", std::move(layers)}};
}

LayerStack stack_from_json(const json& doc) {
  try {
    if (!doc.is_object() || !doc.contains("layers")) {
      throw ValidationError("stack JSON needs a 'layers' array");
    }
    StackProvenance prov;
    prov.lambda0_um = doc.value("lambda0_um", 1.0);
    prov.seed = doc.value("seed", std::uint64_t{0});
    prov.n_elem = doc.value("n_elem", std::size_t{0});
    prov.jitter_sigma_um = doc.value("jitter_sigma_um", 0.0);
    prov.resamples = doc.value("resamples", std::size_t{0});
    std::vector<std::pair<Material, double>> layers;
    for (const auto& l : doc.at("layers")) {
      layers.emplace_back(material_by_id(l.at("material").get<std::string>()),
                          l.at("thickness_um").get<double>());
    }
    // from_layers would merge equal neighbours silently; files must already be merged.
    for (std::size_t i = 1; i < layers.size(); ++i) {
      if (layers[i].first.id == layers[i - 1].first.id) {
        throw ValidationError("stack JSON: layers " + std::to_string(i - 1) + " and " +
                              std::to_string(i) + " share a material");
      }
    }
    for (std::size_t i = 0; i < layers.size(); ++i) {
      if (!(layers[i].second > 0.0)) {
        throw ValidationError("stack JSON: layer " + std::to_string(i) + " has non-positive thickness");
      }
    }
    return LayerStack::from_layers(layers, prov);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("stack JSON: ") + e.what());
  }
}

void write_stack(const LayerStack& stack, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << stack_to_json(stack).dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

LayerStack read_stack(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open stack file " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ValidationError("stack file " + path + ": " + e.what());
  }
  return stack_from_json(doc);
}

void write_spectrum_csv(const TransmissionSpectrum& spectrum, std::ostream& out) {
  out << "omega_rad_per_fs,T,R,re_t,im_t\n";
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    out << format_fixed12(spectrum.omega[i]) << ',' << format_fixed12(spectrum.T(i)) << ','
        << format_fixed12(spectrum.R(i)) << ',' << format_fixed12(spectrum.t[i].real()) << ','
        << format_fixed12(spectrum.t[i].imag()) << '\n';
  }
}

void write_peaks_csv(const PeakList& peaks, std::ostream& out) {
  out << "omega_c_rad_per_fs,fwhm_omega_rad_per_fs,fwhm_nm,t_max\n";
  for (const auto& p : peaks.peaks) {
    out << format_fixed12(p.omega_c) << ',' << format_fixed12(p.fwhm_omega) << ','
        << format_fixed12(p.fwhm_nm) << ',' << format_fixed12(p.t_max) << '\n';
  }
}

}  // namespace rspdc::optics
