#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "rspdc/errors.hpp"
#include "rspdc/optics/generator.hpp"
#include "rspdc/optics/io.hpp"
#include "rspdc/optics/localization.hpp"
#include "rspdc/optics/material.hpp"
#include "rspdc/optics/peaks.hpp"
#include "rspdc/optics/transfer_matrix.hpp"
#include "rspdc/units.hpp"

using namespace rspdc;
using namespace rspdc::optics;

namespace {

// TE Airy formula for a lossless slab of index n and thickness d in vacuum.
double airy_slab(double n, double d, double omega, double theta) {
  const double si = std::sin(theta);
  const double ci = std::cos(theta);
  const double ct = std::sqrt(1.0 - si * si / (n * n));
  const double r = (ci - n * ct) / (ci + n * ct);
  const double rr = r * r;
  const double delta = 2.0 * omega / kSpeedOfLight * n * d * ct;
  const double s = std::sin(delta / 2.0);
  return (1.0 - rr) * (1.0 - rr) / ((1.0 - rr) * (1.0 - rr) + 4.0 * rr * s * s);
}

LayerStack slab(double n, double d) {
  return LayerStack::from_layers({{constant_index_material("slab", n), d}});
}

}  // namespace

TEST(TransferMatrix, QuarterWaveStackMatchesClosedForm) {
  const double nh = 2.3;
  const double nl = 1.45;
  const auto h = constant_index_material("h", nh);
  const auto l = constant_index_material("l", nl);
  for (int pairs : {1, 5, 12}) {
    std::vector<std::pair<Material, double>> layers;
    for (int k = 0; k < pairs; ++k) {
      layers.emplace_back(h, 0.25 / nh);
      layers.emplace_back(l, 0.25 / nl);
    }
    const double t = transmittance(LayerStack::from_layers(layers), omega_from_wavelength(1.0), 0.0);
    const double y = std::pow(nh / nl, 2.0 * pairs);
    EXPECT_NEAR(t, 4.0 * y / ((1.0 + y) * (1.0 + y)), 1e-12 * t) << pairs;
  }
}

TEST(TransferMatrix, SlabMatchesAiry) {
  const double n = 2.2;
  const double d = 0.7;
  const auto s = slab(n, d);
  for (double th : {0.0, 0.3, 1.0}) {
    for (double w : {1.3, 1.7, 2.4, 3.1}) {
      EXPECT_NEAR(transmittance(s, w, th), airy_slab(n, d, w, th), 1e-12) << w << " " << th;
    }
  }
}

TEST(TransferMatrix, ConservesEnergyAndIsReciprocal) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> omega(1.0, 4.0);
  std::uniform_real_distribution<double> theta(0.0, 1.4);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto stack = generate_random_stack({1.0, 250, 0.025, seed});
    for (int k = 0; k < 20; ++k) {
      const double w = omega(rng);
      const double th = theta(rng);
      const auto left = solve_fields(stack, w, th, Incidence::Left);
      const auto right = solve_fields(stack, w, th, Incidence::Right);
      EXPECT_NEAR(std::norm(left.t) + std::norm(left.r), 1.0, 1e-10);
      EXPECT_NEAR(std::norm(right.t) + std::norm(right.r), 1.0, 1e-10);
      EXPECT_NEAR(std::norm(left.t), std::norm(right.t), 1e-10);
    }
  }
}

TEST(TransferMatrix, EmptyStackIsTransparent) {
  LayerStack empty;
  EXPECT_NEAR(transmittance(empty, 2.0, 0.4), 1.0, 1e-15);
}

TEST(Material, SellmeierIndicesAreReasonableInBand) {
  const double w = omega_from_wavelength(1.0);
  EXPECT_GT(refractive_index(lithium_niobate(), w), 2.1);
  EXPECT_LT(refractive_index(lithium_niobate(), w), 2.3);
  EXPECT_GT(refractive_index(silica(), w), 1.44);
  EXPECT_LT(refractive_index(silica(), w), 1.46);
  EXPECT_THROW(refractive_index(silica(), omega_from_wavelength(5.0)), DomainError);
}

TEST(Generator, SeedDeterminesStack) {
  const auto a = generate_random_stack({1.0, 100, 0.025, 17});
  const auto b = generate_random_stack({1.0, 100, 0.025, 17});
  const auto c = generate_random_stack({1.0, 100, 0.025, 18});
  EXPECT_TRUE(a == b);
  EXPECT_FALSE(a == c);
  EXPECT_GT(a.size(), 0u);
  for (const auto& l : a.layers()) EXPECT_GT(l.thickness_um, 0.0);
}

TEST(Generator, RejectsBadParameters) {
  EXPECT_THROW(generate_random_stack({-1.0, 100, 0.025, 1}), ValidationError);
  EXPECT_THROW(generate_random_stack({1.0, 0, 0.025, 1}), ValidationError);
}

TEST(Io, StackJsonRoundTrip) {
  const auto a = generate_random_stack({1.0, 40, 0.025, 3});
  const auto b = stack_from_json(stack_to_json(a));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.material_of(i).id, b.material_of(i).id);
    EXPECT_NEAR(b.layers()[i].thickness_um, a.layers()[i].thickness_um, 1e-11 * a.layers()[i].thickness_um);
  }
  // Thicknesses are stored with 12 significant digits, so a second pass is exact.
  EXPECT_TRUE(stack_from_json(stack_to_json(b)) == b);
}

TEST(Peaks, SlabResonancesMatchAiry) {
  const double n = 4.0;
  const double d = 1.0;
  const double spacing = std::numbers::pi * kSpeedOfLight / (n * d);
  const double rr = std::pow((n - 1.0) / (n + 1.0), 2);
  const double inv_sqrt_f = (1.0 - rr) / (2.0 * std::sqrt(rr));
  const double fwhm = 2.0 * kSpeedOfLight * std::asin(inv_sqrt_f) / (n * d);
  ScanOptions fine;
  fine.samples_per_fwhm = 60;
  const auto found = scan_peaks(slab(n, d), 5.5 * spacing, 8.5 * spacing, 0.0, fine);
  ASSERT_EQ(found.peaks.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_NEAR(found.peaks[k].omega_c, (6.0 + k) * spacing, 1e-6 * spacing);
    EXPECT_NEAR(found.peaks[k].fwhm_omega, fwhm, 1e-6 * fwhm);
    EXPECT_NEAR(found.peaks[k].t_max, 1.0, 1e-9);
  }
  // Linear interpolation of the half-maximum crossings at the default density.
  const auto coarse = scan_peaks(slab(n, d), 5.5 * spacing, 8.5 * spacing, 0.0);
  ASSERT_EQ(coarse.peaks.size(), 3u);
  EXPECT_NEAR(coarse.peaks[0].fwhm_omega, fwhm, 5e-3 * fwhm);
}

TEST(Localization, EstimateUsesMeanLengthOverMeanLogT) {
  const std::vector<double> ln_t{-2.0, -4.0, -6.0};
  const std::vector<double> len{10.0, 20.0, 30.0};
  const auto e = estimate_localization(ln_t, len, 50, 1);
  EXPECT_NEAR(e.xi_um, -2.0 * 20.0 / -4.0, 1e-12);
  EXPECT_EQ(e.used, 3u);
  EXPECT_GE(e.stderr_um, 0.0);
}

TEST(Localization, LongerStacksTransmitLess) {
  std::vector<LayerStack> stacks;
  for (std::uint64_t s = 0; s < 200; ++s) stacks.push_back(generate_random_stack({1.0, 250, 0.025, s}));
  const auto e = localization_length(stacks, omega_from_wavelength(1.0), 0.0, 0);
  EXPECT_TRUE(std::isfinite(e.xi_um));
  EXPECT_GT(e.xi_um, 5.0);
  EXPECT_LT(e.xi_um, 60.0);
  EXPECT_LT(e.mean_ln_t, 0.0);
}
