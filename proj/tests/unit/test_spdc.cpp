#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "rspdc/errors.hpp"
#include "rspdc/grid.hpp"
#include "rspdc/optics/generator.hpp"
#include "rspdc/optics/peaks.hpp"
#include "rspdc/spdc/amplitude.hpp"
#include "rspdc/spdc/observables.hpp"
#include "rspdc/spdc/superposition.hpp"
#include "rspdc/units.hpp"

using namespace rspdc;
using namespace rspdc::spdc;

namespace {

struct Fixture {
  optics::LayerStack stack;
  optics::Peak peak;
};

// A generated stack and its tallest collinear peak near the design frequency.
const Fixture& fixture() {
  static const Fixture f = [] {
    const double w0 = omega_from_wavelength(1.0);
    for (std::uint64_t seed = 1;; ++seed) {
      auto stack = optics::generate_random_stack({1.0, 250, 0.025, seed});
      const auto found = optics::scan_peaks(stack, 0.95 * w0, 1.05 * w0, 0.0);
      if (found.peaks.empty()) continue;
      auto best = *std::max_element(found.peaks.begin(), found.peaks.end(),
                                    [](const auto& a, const auto& b) { return a.t_max < b.t_max; });
      if (best.t_max > 0.5) return Fixture{std::move(stack), best};
    }
  }();
  return f;
}

PumpConfig pump_for(const optics::Peak& p) {
  PumpConfig pump;
  pump.omega_p0 = 2.0 * p.omega_c;
  return pump;
}

}  // namespace

TEST(Overlap, MatchesSimpsonQuadrature) {
  const double length = 0.37;
  for (double dk : {0.0, 1e-6, 1e-3, 0.5, 7.0, -40.0}) {
    const int n = 2000;
    std::complex<double> acc{0.0, 0.0};
    for (int k = 0; k <= n; ++k) {
      const double z = length * k / n;
      const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
      acc += w * std::polar(1.0, dk * z);
    }
    acc *= length / (3.0 * n);
    EXPECT_NEAR(std::abs(layer_overlap(dk, length) - acc), 0.0, 1e-10) << dk;
  }
}

TEST(Amplitude, LinearInChi2AndPumpField) {
  const auto& f = fixture();
  const auto grid = FrequencyGrid::square_around(f.peak.omega_c, 4.0 * f.peak.fwhm_omega, 64);
  const auto pump = pump_for(f.peak);
  const auto a = two_photon_amplitude(f.stack, pump, {}, grid, Normalization::Physical);
  const auto b = two_photon_amplitude(f.stack.with_chi2_scaled(2.0), pump, {}, grid, Normalization::Physical);
  EXPECT_LT((b.values - 2.0 * a.values).norm(), 1e-12 * a.values.norm());
  auto strong = pump;
  strong.amplitude_v_per_um = 3.0;
  const auto c = two_photon_amplitude(f.stack, strong, {}, grid, Normalization::Physical);
  EXPECT_NEAR(pair_number(c) / pair_number(a), 9.0, 1e-9);
}

TEST(Amplitude, PaperNormalization) {
  const auto& f = fixture();
  const auto grid = FrequencyGrid::square_around(f.peak.omega_c, 4.0 * f.peak.fwhm_omega, 64);
  auto tpa = two_photon_amplitude(f.stack, pump_for(f.peak), {}, grid, Normalization::Paper);
  EXPECT_NEAR(paper_norm(tpa), 1.0, 1e-12);
  EXPECT_NO_THROW(check_normalization(tpa));
}

TEST(Amplitude, DegenerateStateIsExchangeSymmetric) {
  const auto& f = fixture();
  const auto grid = FrequencyGrid::square_around(f.peak.omega_c, 4.0 * f.peak.fwhm_omega, 64);
  const auto tpa = two_photon_amplitude(f.stack, pump_for(f.peak), {}, grid);
  EXPECT_LT((tpa.values - tpa.values.transpose()).norm(), 1e-10 * tpa.values.norm());
}

TEST(Amplitude, RejectsPumpOutsideBand) {
  const auto& f = fixture();
  PumpConfig pump;
  pump.omega_p0 = omega_from_wavelength(0.2);
  const auto grid = FrequencyGrid::square_around(pump.omega_p0 / 2.0, 0.01, 64);
  EXPECT_ANY_THROW(two_photon_amplitude(f.stack, pump, {}, grid));
}

TEST(Filter, ZeroesOutsideWindows) {
  const auto& f = fixture();
  const auto grid = FrequencyGrid::square_around(f.peak.omega_c, 8.0 * f.peak.fwhm_omega, 128);
  const auto tpa = two_photon_amplitude(f.stack, pump_for(f.peak), {}, grid, Normalization::Physical);
  const auto windows = peak_windows(std::span(&f.peak, 1), 2.0);
  const auto out = bandpass_filter(tpa, windows);
  for (std::size_t k = 0; k < grid.signal.count; ++k) {
    for (std::size_t l = 0; l < grid.idler.count; ++l) {
      const bool inside = std::abs(grid.signal.at(k) - f.peak.omega_c) <= 2.0 * f.peak.fwhm_omega &&
                          std::abs(grid.idler.at(l) - f.peak.omega_c) <= 2.0 * f.peak.fwhm_omega;
      const auto v = out.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
      if (inside) {
        EXPECT_EQ(v, tpa.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)));
      } else {
        EXPECT_EQ(v, std::complex<double>(0.0, 0.0));
      }
    }
  }
  const std::vector<SpectralWindow> away{{f.peak.omega_c + 1.0, f.peak.omega_c + 1.1}};
  EXPECT_THROW(bandpass_filter(tpa, away), NumericalError);
}

TEST(Observables, PeakIdlerSamples) {
  const double c = 1.9;
  const double fwhm = 1e-6;
  const auto s = peak_idler_samples(c, fwhm, 250.0);
  EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
  EXPECT_NE(std::find(s.begin(), s.end(), c), s.end());
  const double sigma = std::sqrt(2.0 * std::numbers::ln2) / 250.0;
  EXPECT_NEAR(s.front(), c - 5.0 * sigma, 1e-15);
  EXPECT_NEAR(s.back(), c + 5.0 * sigma, 1e-15);
  EXPECT_THROW(peak_idler_samples(c, 0.0, 250.0), ValidationError);
}

TEST(Observables, RelativeSpectrumGridAndLineAgree) {
  const auto& f = fixture();
  const auto pump = pump_for(f.peak);
  const auto grid = FrequencyGrid::square_around(f.peak.omega_c, 8.0 * f.peak.fwhm_omega, 129);
  const auto tpa = two_photon_amplitude(f.stack, pump, {}, grid, Normalization::Physical);
  const auto rel = relative_spectrum(tpa, f.stack, pump);
  const AmplitudeModel model(f.stack, pump, {});
  const auto idler = grid.idler.values();
  const double line = relative_spectrum_at(model, grid.signal.at(64), idler);
  EXPECT_NEAR(rel.ratio[64] / line, 1.0, 1e-9);
}

TEST(Observables, RelativeSpectrumConvergesWithIdlerWindow) {
  const auto& f = fixture();
  const auto pump = pump_for(f.peak);
  const AmplitudeModel model(f.stack, pump, {});
  std::vector<double> values;
  for (double half : {8.0, 32.0, 128.0}) {
    const auto idler = UniformAxis::linspace(f.peak.omega_c - half * f.peak.fwhm_omega,
                                             f.peak.omega_c + half * f.peak.fwhm_omega,
                                             static_cast<std::size_t>(40 * half) + 1).values();
    values.push_back(relative_spectrum_at(model, f.peak.omega_c, idler));
  }
  EXPECT_GT(values[0], 0.0);
  EXPECT_LT(std::abs(values[2] - values[1]), std::abs(values[1] - values[0]));
  const double sampled = relative_spectrum_at(model, f.peak.omega_c,
                                              peak_idler_samples(f.peak.omega_c, f.peak.fwhm_omega, 250.0));
  EXPECT_NEAR(sampled / values[2], 1.0, 0.02);
}

TEST(Observables, SpectrumFwhmOfGaussian) {
  std::vector<double> w;
  std::vector<double> v;
  const double sigma = 0.01;
  for (int k = -400; k <= 400; ++k) {
    w.push_back(1.0 + k * 1e-4);
    v.push_back(std::exp(-std::pow(k * 1e-4, 2) / (2.0 * sigma * sigma)));
  }
  EXPECT_NEAR(spectrum_fwhm(w, v), 2.0 * std::sqrt(2.0 * std::numbers::ln2) * sigma, 1e-6);
}

TEST(Superposition, PinholeCopiesLandOnGridSteps) {
  TwoPhotonAmplitude tpa;
  tpa.grid = FrequencyGrid::square_around(1.0, 0.01, 65);
  tpa.values = Eigen::MatrixXcd::Zero(65, 65);
  tpa.values(32, 32) = 1.0;
  tpa.normalization = Normalization::Physical;
  const double dw = 4.0 * tpa.grid.signal.step;
  const auto out = superpose_pinholes(tpa, {3, dw, std::numbers::pi / 2.0});
  EXPECT_EQ(out.values.rows(), 65 + 8);
  int nonzero = 0;
  for (Eigen::Index k = 0; k < out.values.rows(); ++k) {
    for (Eigen::Index l = 0; l < out.values.cols(); ++l) {
      if (std::abs(out.values(k, l)) > 0.0) {
        ++nonzero;
        EXPECT_EQ(k, l);
        EXPECT_NEAR(std::abs(out.values(k, l)), 1.0, 1e-15);
      }
    }
  }
  EXPECT_EQ(nonzero, 3);
  EXPECT_THROW(superpose_pinholes(tpa, {0, dw, 0.0}), ValidationError);
}
