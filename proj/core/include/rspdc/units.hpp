#pragma once

#include <numbers>

// Internal unit system: lengths in micrometres, times in femtoseconds,
// angular frequencies in rad/fs.
namespace rspdc {

inline constexpr double kSpeedOfLight = 0.299792458;     // um/fs
inline constexpr double kHbarEvFs = 0.6582119569;        // eV fs
inline constexpr double kHbarJs = 1.054571817e-34;       // J s
inline constexpr double kEpsilon0 = 8.8541878128e-12;    // F/m
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr double omega_from_wavelength(double lambda_um) {
  return kTwoPi * kSpeedOfLight / lambda_um;
}

inline constexpr double wavelength_from_omega(double omega) {
  return kTwoPi * kSpeedOfLight / omega;
}

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace rspdc
