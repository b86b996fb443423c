#include "rspdc/optics/material.hpp"

#include <cmath>
#include <sstream>

#include "rspdc/errors.hpp"
#include "rspdc/units.hpp"

namespace rspdc::optics {

bool SupportedBand::contains(double omega) {
  if (!(omega > 0.0)) return false;
  const double lambda = wavelength_from_omega(omega);
  return lambda >= kMinWavelengthUm && lambda <= kMaxWavelengthUm;
}

Material lithium_niobate() {
  // Ordinary-wave Sellmeier (handbook form, lambda in um).
  return Material{"LiNbO3", Sellmeier{4.9048, 0.11768, 0.0475, 0.027169}, 27.0};
}

Material silica() { return Material{"SiO2", ConstantIndex{1.45}, 0.0}; }

Material constant_index_material(std::string id, double n, double chi2_pm_per_v) {
  return Material{std::move(id), ConstantIndex{n}, chi2_pm_per_v};
}

Material material_by_id(std::string_view id) {
  if (id == "LiNbO3") return lithium_niobate();
  if (id == "SiO2") return silica();
  throw ValidationError("unknown material '" + std::string(id) + "' (expected LiNbO3 or SiO2)");
}

namespace {

double index_unchecked(const Material& material, double omega) {
  if (const auto* c = std::get_if<ConstantIndex>(&material.dispersion)) return c->n;
  const auto& s = std::get<Sellmeier>(material.dispersion);
  const double lambda = wavelength_from_omega(omega);
  const double l2 = lambda * lambda;
  return std::sqrt(s.a + s.b / (l2 - s.c) - s.d * l2);
}

}  // namespace

double refractive_index(const Material& material, double omega) {
  if (!SupportedBand::contains(omega)) {
    std::ostringstream msg;
    msg << "omega = " << omega << " rad/fs is outside the supported band "
        << SupportedBand::kMinWavelengthUm << "-" << SupportedBand::kMaxWavelengthUm
        << " um (material " << material.id << ")";
    throw DomainError(msg.str());
  }
  return index_unchecked(material, omega);
}

void validate_material(const Material& material) {
  if (!(material.chi2_pm_per_v >= 0.0)) {
    throw ValidationError("material " + material.id + ": chi2 must be >= 0");
  }
  constexpr int kSamples = 64;
  for (int i = 0; i <= kSamples; ++i) {
    const double lambda = SupportedBand::kMinWavelengthUm +
                          (SupportedBand::kMaxWavelengthUm - SupportedBand::kMinWavelengthUm) * i /
                              kSamples;
    const double n = index_unchecked(material, omega_from_wavelength(lambda));
    if (!(n >= 1.0)) {
      throw ValidationError("material " + material.id +
                            ": refractive index below 1 inside the supported band");
    }
  }
}

}  // namespace rspdc::optics
