#pragma once

#include <string>
#include <string_view>
#include <variant>

namespace rspdc::optics {

/// Wavelength window (um) over which dispersion formulas are trusted.
struct SupportedBand {
  static constexpr double kMinWavelengthUm = 0.4;
  static constexpr double kMaxWavelengthUm = 2.5;
  static bool contains(double omega);
};

struct ConstantIndex {
  double n = 1.0;
};

/// n^2 = a + b / (lambda^2 - c) - d * lambda^2, lambda in um.
struct Sellmeier {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
};

struct Material {
  std::string id;
  std::variant<ConstantIndex, Sellmeier> dispersion;
  double chi2_pm_per_v = 0.0;  // effective scalar nonlinearity, zero for linear media
};

/// Ordinary-wave LiNbO3 (d33 = 27 pm/V).
Material lithium_niobate();
/// Fused silica with a fixed index of 1.45, linear.
Material silica();
/// Non-dispersive dielectric; handy for synthetic test stacks.
Material constant_index_material(std::string id, double n, double chi2_pm_per_v = 0.0);

/// Looks up "LiNbO3" or "SiO2". Throws ValidationError otherwise.
Material material_by_id(std::string_view id);

/// Refractive index at angular frequency omega (rad/fs).
/// Throws DomainError when omega lies outside SupportedBand.
double refractive_index(const Material& material, double omega);

/// Checks n >= 1 across the band and chi2 >= 0. Throws ValidationError.
void validate_material(const Material& material);

}  // namespace rspdc::optics
