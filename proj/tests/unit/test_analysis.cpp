#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/QR>
#include <gtest/gtest.h>

#include "rspdc/analysis/interferometry.hpp"
#include "rspdc/analysis/schmidt.hpp"
#include "rspdc/analysis/temporal.hpp"
#include "rspdc/errors.hpp"
#include "rspdc/spdc/superposition.hpp"

using namespace rspdc;
using namespace rspdc::analysis;
using spdc::FrequencyGrid;
using spdc::TwoPhotonAmplitude;

namespace {

TwoPhotonAmplitude from_function(const FrequencyGrid& grid, auto&& f) {
  TwoPhotonAmplitude tpa;
  tpa.grid = grid;
  tpa.normalization = spdc::Normalization::Physical;
  tpa.omega_p0 = grid.signal.at(grid.signal.count / 2) + grid.idler.at(grid.idler.count / 2);
  tpa.values.resize(static_cast<Eigen::Index>(grid.signal.count), static_cast<Eigen::Index>(grid.idler.count));
  for (std::size_t k = 0; k < grid.signal.count; ++k) {
    for (std::size_t l = 0; l < grid.idler.count; ++l) {
      tpa.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = f(grid.signal.at(k), grid.idler.at(l));
    }
  }
  return tpa;
}

double gauss(double x, double c, double s) { return std::exp(-(x - c) * (x - c) / (4.0 * s * s)); }

// sum_n a_n u_n v_n^T with u_n, v_n orthonormal under the trapezoid rule.
TwoPhotonAmplitude schmidt_state(const std::vector<double>& a, std::uint64_t seed) {
  TwoPhotonAmplitude tpa;
  tpa.grid = FrequencyGrid::square_around(2.0, 0.1, 80);
  tpa.normalization = spdc::Normalization::Physical;
  const Eigen::Index n = 80;
  const auto r = static_cast<Eigen::Index>(a.size());
  const auto w = trapezoid_weights(tpa.grid.signal);
  Eigen::VectorXd sq(n);
  for (Eigen::Index k = 0; k < n; ++k) sq[k] = std::sqrt(w[static_cast<std::size_t>(k)]);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  auto basis = [&] {
    Eigen::MatrixXcd m(n, r);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < r; ++j) m(i, j) = {g(rng), g(rng)};
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
    return Eigen::MatrixXcd(sq.cwiseInverse().asDiagonal() * (qr.householderQ() * Eigen::MatrixXcd::Identity(n, r)));
  };
  const Eigen::MatrixXcd u = basis();
  const Eigen::MatrixXcd v = basis();
  tpa.values = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j < r; ++j) tpa.values += a[static_cast<std::size_t>(j)] * u.col(j) * v.col(j).transpose();
  return tpa;
}

}  // namespace

TEST(Schmidt, RecoversRankTwoWeights) {
  const auto tpa = schmidt_state({0.8, 0.6}, 3);
  const auto s = schmidt_decompose(tpa);
  EXPECT_NEAR(s.weights[0], 0.64, 1e-12);
  EXPECT_NEAR(s.weights[1], 0.36, 1e-12);
  EXPECT_LT(s.weights[2], 1e-20);
  EXPECT_LT((reconstruct(s, 2) - tpa.values).norm(), 1e-12 * tpa.values.norm());
}

TEST(Schmidt, UniformWeights) {
  for (std::size_t m : {1u, 2u, 3u, 5u, 8u}) {
    const auto s = schmidt_decompose(schmidt_state(std::vector<double>(m, 0.5), m), false);
    EXPECT_NEAR(entropy(s), std::log2(static_cast<double>(m)), 1e-10);
    EXPECT_NEAR(cooperativity(s), static_cast<double>(m), 1e-10);
  }
}

TEST(Schmidt, SeparableGaussianIsSingleMode) {
  const auto grid = FrequencyGrid::square_around(1.5, 0.05, 128);
  const auto s = schmidt_decompose(from_function(grid, [](double a, double b) { return gauss(a, 1.5, 0.005) * gauss(b, 1.5, 0.008); }), false);
  EXPECT_NEAR(s.weights[0], 1.0, 1e-12);
  EXPECT_NEAR(cooperativity(s), 1.0, 1e-12);
}

TEST(Schmidt, DisjointPinholeCopiesGiveTwoModes) {
  const auto grid = FrequencyGrid::square_around(1.5, 0.05, 128);
  const auto base = from_function(grid, [](double a, double b) { return gauss(a, 1.5, 0.004) * gauss(b, 1.5, 0.004); });
  const auto two = spdc::superpose_pinholes(base, {2, 60.0 * grid.signal.step, 0.0});
  EXPECT_NEAR(cooperativity(schmidt_decompose(two, false)), 2.0, 1e-10);
}

TEST(Schmidt, RejectsZeroAmplitude) {
  TwoPhotonAmplitude tpa;
  tpa.grid = FrequencyGrid::square_around(1.0, 0.1, 16);
  tpa.values = Eigen::MatrixXcd::Zero(16, 16);
  EXPECT_THROW(schmidt_decompose(tpa), NumericalError);
}

TEST(Temporal, ParsevalAndGaussianWidth) {
  const double sigma = 0.003;
  const double c = 1.7;
  const auto grid = FrequencyGrid::square_around(c, 12.0 * sigma, 200);
  const auto tpa = from_function(grid, [&](double a, double b) { return gauss(a, c, sigma) * gauss(b, c, sigma); });
  const auto tm = temporal_amplitude(tpa);
  EXPECT_FALSE(tm.aliasing);
  const double rhs = weighted_spectral_norm(tpa, tm.omega_s0, tm.omega_i0);
  EXPECT_NEAR(squared_norm(tm) / rhs, 1.0, 1e-10);
  const auto flux = photon_flux(tm, Field::Signal);
  double w = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t k = 0; k < flux.t.size(); ++k) {
    w += flux.flux[k];
    m1 += flux.flux[k] * flux.t[k];
    m2 += flux.flux[k] * flux.t[k] * flux.t[k];
  }
  m1 /= w;
  EXPECT_NEAR(std::sqrt(m2 / w - m1 * m1), 1.0 / (2.0 * sigma), 0.005 / (2.0 * sigma));
  EXPECT_NEAR(tm.omega_s0, c, 1e-9);
}

TEST(Temporal, ResolvedMaxima) {
  std::vector<double> one;
  std::vector<double> two;
  std::vector<double> ripple;
  for (int k = 0; k < 400; ++k) {
    const double x = k;
    one.push_back(std::exp(-(x - 200) * (x - 200) / 800.0));
    two.push_back(std::exp(-(x - 120) * (x - 120) / 200.0) + 0.5 * std::exp(-(x - 280) * (x - 280) / 200.0));
    ripple.push_back(one.back() * (1.0 + 0.01 * std::sin(x)));
  }
  EXPECT_EQ(resolved_maxima(one).size(), 1u);
  EXPECT_EQ(resolved_maxima(two).size(), 2u);
  EXPECT_EQ(resolved_maxima(ripple).size(), 1u);
}

TEST(Hom, SymmetricDipAndAntisymmetricPeak) {
  const auto grid = FrequencyGrid::square_around(1.5, 0.05, 128);
  const auto sym = from_function(grid, [](double a, double b) { return gauss(a, 1.49, 0.004) * gauss(b, 1.51, 0.004) + gauss(a, 1.51, 0.004) * gauss(b, 1.49, 0.004); });
  const auto anti = from_function(grid, [](double a, double b) { return gauss(a, 1.49, 0.004) * gauss(b, 1.51, 0.004) - gauss(a, 1.51, 0.004) * gauss(b, 1.49, 0.004); });
  const std::vector<double> tau{0.0, 5000.0};
  const auto hs = hom_rate(sym, tau);
  const auto ha = hom_rate(anti, tau);
  EXPECT_NEAR(hs.rate[0], 0.0, 1e-12);
  EXPECT_NEAR(ha.rate[0], 2.0, 1e-12);
  EXPECT_NEAR(hs.rate[1], 1.0, 1e-6);
  EXPECT_NEAR(ha.rate[1], 1.0, 1e-6);
}

TEST(Hom, OscillationPeriodOfTwoColourState) {
  const auto grid = FrequencyGrid::square_around(1.5, 0.05, 256);
  const double a0 = 1.48;
  const double b0 = 1.52;
  const auto tpa = from_function(grid, [&](double a, double b) { return gauss(a, a0, 0.002) * gauss(b, b0, 0.002) + gauss(a, b0, 0.002) * gauss(b, a0, 0.002); });
  const auto osc = hom_oscillation(tpa);
  EXPECT_NEAR(osc.period_fs, 2.0 * std::numbers::pi / (b0 - a0), 0.01 * 2.0 * std::numbers::pi / (b0 - a0));
}

TEST(Franson, OriginAndFarBaseline) {
  const auto grid = FrequencyGrid::square_around(1.5, 0.05, 128);
  // Frequency-anticorrelated state with a narrow sum and a broad difference.
  const auto tpa = from_function(grid, [](double a, double b) { return gauss(a + b, 3.0, 0.002) * gauss(a - b, 0.0, 0.01); });
  const std::vector<double> zero{0.0};
  EXPECT_NEAR(franson_rate(tpa, zero, zero).rate(0, 0), 1.0, 1e-12);
  const std::vector<double> far{3000.0, -2500.0};
  const auto pat = franson_rate(tpa, far, std::vector<double>{-1800.0, 2700.0});
  EXPECT_NEAR(pat.rate(0, 0), 0.25, 1e-3);
  EXPECT_NEAR(pat.rate(1, 1), 0.25, 1e-3);
}

TEST(Franson, FringeOrientationOfSyntheticPatterns) {
  const int n = 64;
  const double step = 0.5;
  Eigen::MatrixXd diff(n, n);
  Eigen::MatrixXd sum(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      diff(a, b) = 0.5 + 0.5 * std::cos(0.9 * step * (a - b));
      sum(a, b) = 0.5 + 0.5 * std::cos(0.9 * step * (a + b));
    }
  }
  EXPECT_NEAR(fringe_orientation(diff, step, step).fringe_deg, 45.0, 1.0);
  EXPECT_NEAR(fringe_orientation(sum, step, step).fringe_deg, 135.0, 1.0);
  EXPECT_NEAR(fringe_orientation(diff, step, step).magnitude, 0.9 * std::sqrt(2.0), 0.05);
}
