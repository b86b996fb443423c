#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/QR>

#include "rspdc/analysis/interferometry.hpp"
#include "rspdc/analysis/schmidt.hpp"
#include "rspdc/analysis/temporal.hpp"
#include "rspdc/ensemble/campaign.hpp"
#include "rspdc/ensemble/io.hpp"
#include "rspdc/ensemble/seed.hpp"
#include "rspdc/ensemble/selection.hpp"
#include "rspdc/format.hpp"
#include "rspdc/optics/generator.hpp"
#include "rspdc/optics/material.hpp"
#include "rspdc/optics/transfer_matrix.hpp"
#include "rspdc/spdc/amplitude.hpp"
#include "rspdc/spdc/superposition.hpp"
#include "rspdc/units.hpp"

using namespace rspdc;

namespace {

// Tolerances.
constexpr double kQuarterWaveRelTol = 1e-6;
constexpr double kQuarterWaveSeconds = 1.0;
constexpr std::size_t kProbes = 10000;
constexpr double kConservationTol = 1e-10;
constexpr double kReciprocityTol = 1e-10;
constexpr std::size_t kLocalizationCount = 2000;
constexpr double kXi0 = 22.0, kXi0Tol = 0.30;
constexpr double kXi30 = 9.5, kXi30Tol = 0.40;
constexpr double kXi60 = 2.5, kXi60Tol = 0.40;
constexpr std::size_t kMinPeaks = 1000;
constexpr std::size_t kWideCount = 2000;
constexpr double kMinFirstWeight = 0.99;
constexpr double kMaxEntropy = 0.01;
constexpr double kMaxCooperativity = 1.01;
constexpr double kMaxHomMinimum = 0.01;
constexpr double kEnhancementLo = 1e2, kEnhancementHi = 1e4;
constexpr double kSchmidtTol = 1e-10;
constexpr double kTwoPinholeK = 2.0, kTwoPinholeTol = 0.05;
constexpr double kFringeDeg = 45.0, kFringeTol = 5.0;
constexpr double kParsevalTol = 1e-6;
constexpr double kWidthProductTol = 0.01;
constexpr double kFransonOriginTol = 1e-12;
constexpr double kFransonBaseline = 0.25, kFransonBaselineTol = 0.01;
constexpr std::size_t kMinFluxMaxima = 2;
constexpr double kHomPeriodTol = 0.05;
constexpr std::size_t kSearchBudget = 400;
constexpr std::size_t kShardCount = 48;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) { return format_fixed12(v); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ensemble::GeneratorSpace default_space() { return {}; }

spdc::PumpConfig pump_at(double omega_p0) {
  spdc::PumpConfig p;
  p.omega_p0 = omega_p0;
  return p;
}

// Shared by criteria 5, 8, 9 and 10.
struct DegenerateState {
  ensemble::SearchMatch match;
  ensemble::PinholeLayout layout;
  spdc::TwoPhotonAmplitude tpa;
};

std::optional<DegenerateState>& degenerate() {
  static std::optional<DegenerateState> cache;
  static bool tried = false;
  if (!tried) {
    tried = true;
    auto m = ensemble::select_degenerate(default_space(), kSearchBudget, 100.0);
    if (m) {
      const auto& p = m->peaks.front();
      auto layout = ensemble::pinhole_layout(p);
      auto tpa = spdc::two_photon_amplitude(m->stack, pump_at(2.0 * p.omega_c), {}, layout.grid);
      cache = DegenerateState{std::move(*m), std::move(layout), std::move(tpa)};
    }
  }
  return cache;
}

// Campaign A: N = 250 at 0, 30, 60 deg with enhancement. Campaign B: N = 500, 750 at 0 deg.
const ensemble::EnsembleReport& campaign_a() {
  static std::optional<ensemble::EnsembleReport> r;
  if (!r) {
    ensemble::EnsembleConfig c;
    c.count = kLocalizationCount;
    c.n_elem = {250};
    c.theta_rad = {0.0, deg_to_rad(30.0), deg_to_rad(60.0)};
    c.enhancement = true;
    r = ensemble::run_campaign(c);
  }
  return *r;
}

const ensemble::EnsembleReport& campaign_b() {
  static std::optional<ensemble::EnsembleReport> r;
  if (!r) {
    ensemble::EnsembleConfig c;
    c.count = kWideCount;
    c.n_elem = {500, 750};
    c.theta_rad = {0.0};
    r = ensemble::run_campaign(c);
  }
  return *r;
}

const ensemble::CellReport& cell(const ensemble::EnsembleReport& r, std::size_t n, double theta_deg) {
  for (const auto& c : r.cells) {
    if (c.n_elem == n && std::abs(rad_to_deg(c.theta_rad) - theta_deg) < 1e-9) return c;
  }
  throw std::runtime_error("missing campaign cell");
}

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto h = optics::lithium_niobate();
  const auto l = optics::silica();
  const double lambda0 = 1.0;
  const double w0 = omega_from_wavelength(lambda0);
  const double nh = optics::refractive_index(h, w0);
  const double nl = optics::refractive_index(l, w0);
  std::vector<std::pair<optics::Material, double>> layers;
  for (int k = 0; k < 30; ++k) {
    layers.emplace_back(h, lambda0 / (4.0 * nh));
    layers.emplace_back(l, lambda0 / (4.0 * nl));
  }
  const auto stack = optics::LayerStack::from_layers(layers);
  const double t = optics::transmittance(stack, w0, 0.0);
  const double elapsed = seconds_since(t0);
  const double y = std::pow(nh / nl, 60.0);
  const double expected = 4.0 * y / ((1.0 + y) * (1.0 + y));
  const double rel = std::abs(t - expected) / expected;
  return {rel <= kQuarterWaveRelTol && elapsed < kQuarterWaveSeconds,
          "T " + fmt(t) + " closed form " + fmt(expected) + " rel " + fmt(rel) + " time_s " + fmt(elapsed)};
}

Outcome criterion2() {
  std::mt19937_64 rng(20240101);
  const double wlo = omega_from_wavelength(optics::SupportedBand::kMaxWavelengthUm);
  const double whi = omega_from_wavelength(optics::SupportedBand::kMinWavelengthUm);
  std::uniform_real_distribution<double> omega(wlo, whi);
  std::uniform_real_distribution<double> theta(0.0, deg_to_rad(85.0));
  std::uniform_int_distribution<std::size_t> nelem(10, 400);
  double worst_sum = 0.0;
  double worst_lr = 0.0;
  const std::size_t per_stack = 100;
  for (std::size_t s = 0; s < kProbes / per_stack; ++s) {
    const auto stack = optics::generate_random_stack({1.0, nelem(rng), 0.025, ensemble::derive_seed(99, s)});
    for (std::size_t k = 0; k < per_stack; ++k) {
      const double w = omega(rng);
      const double th = theta(rng);
      const auto left = optics::solve_fields(stack, w, th, optics::Incidence::Left);
      const auto right = optics::solve_fields(stack, w, th, optics::Incidence::Right);
      worst_sum = std::max(worst_sum, std::abs(std::norm(left.t) + std::norm(left.r) - 1.0));
      worst_lr = std::max(worst_lr, std::abs(std::norm(left.t) - std::norm(right.t)));
    }
  }
  return {worst_sum <= kConservationTol && worst_lr <= kReciprocityTol,
          "probes " + std::to_string(kProbes) + " max_energy_error " + fmt(worst_sum) +
              " max_left_right " + fmt(worst_lr)};
}

Outcome criterion3() {
  const auto& r = campaign_a();
  const double x0 = cell(r, 250, 0.0).localization.xi_um;
  const double x30 = cell(r, 250, 30.0).localization.xi_um;
  const double x60 = cell(r, 250, 60.0).localization.xi_um;
  auto within = [](double x, double ref, double tol) { return std::abs(x - ref) <= tol * ref; };
  const bool ok0 = within(x0, kXi0, kXi0Tol);
  const bool ok30 = within(x30, kXi30, kXi30Tol);
  const bool ok60 = within(x60, kXi60, kXi60Tol);
  std::ostringstream d;
  d << "structures " << kLocalizationCount << " xi_um(0) " << fmt(x0) << (ok0 ? " ok" : " out")
    << " xi_um(30) " << fmt(x30) << (ok30 ? " ok" : " out") << " xi_um(60) " << fmt(x60)
    << (ok60 ? " ok" : " out");
  return {ok0 && ok30 && ok60, d.str()};
}

Outcome criterion4() {
  const auto& a = campaign_a();
  const auto& b = campaign_b();
  const std::vector<const ensemble::CellReport*> by_n = {&cell(a, 250, 0.0), &cell(b, 500, 0.0), &cell(b, 750, 0.0)};
  const std::vector<const ensemble::CellReport*> by_theta = {&cell(a, 250, 0.0), &cell(a, 250, 30.0), &cell(a, 250, 60.0)};
  bool ok = true;
  std::ostringstream d;
  for (const auto* seq : {&by_n, &by_theta}) {
    for (std::size_t k = 0; k < seq->size(); ++k) {
      const auto* c = (*seq)[k];
      ok = ok && c->peaks >= kMinPeaks;
      if (k > 0) ok = ok && c->median_fwhm_nm < (*seq)[k - 1]->median_fwhm_nm;
    }
  }
  for (const auto* c : {by_n[0], by_n[1], by_n[2], by_theta[1], by_theta[2]}) {
    d << "N" << c->n_elem << "/" << std::lround(rad_to_deg(c->theta_rad)) << "deg median_nm "
      << fmt(c->median_fwhm_nm) << " peaks " << c->peaks << "; ";
  }
  return {ok, d.str()};
}

Outcome criterion5() {
  const auto& st = degenerate();
  if (!st) return {false, "no degenerate structure within the search budget"};
  const auto sch = analysis::schmidt_decompose(st->tpa, false);
  const double l1 = sch.weights.front();
  const double s = analysis::entropy(sch);
  const double k = analysis::cooperativity(sch);
  const double coherence = kTwoPi / st->match.peaks.front().fwhm_omega;
  const auto tau = UniformAxis::linspace(-coherence, coherence, 401).values();
  const auto hom = analysis::hom_rate(st->tpa, tau);
  const double hmin = *std::min_element(hom.rate.begin(), hom.rate.end());
  return {l1 >= kMinFirstWeight && s <= kMaxEntropy && k <= kMaxCooperativity && hmin <= kMaxHomMinimum,
          "structure " + std::to_string(st->match.index) + " lambda1_sq " + fmt(l1) + " S_bits " + fmt(s) +
              " K " + fmt(k) + " hom_min " + fmt(hmin)};
}

Outcome criterion6() {
  const auto& c = cell(campaign_a(), 250, 0.0);
  const double e = c.max_enhancement;
  return {e >= kEnhancementLo && e <= kEnhancementHi,
          "structures " + std::to_string(c.structures) + " max_relative_spectrum " + fmt(e) +
              " at_structure " + std::to_string(c.max_enhancement_index)};
}

// Amplitude sum_n a_n u_n(ws) v_n(wi) with u_n, v_n orthonormal under the
// trapezoid quadrature, built by QR of random vectors.
spdc::TwoPhotonAmplitude constructed_state(const std::vector<double>& amplitudes, std::uint64_t seed) {
  spdc::TwoPhotonAmplitude tpa;
  tpa.grid = spdc::FrequencyGrid::square_around(1.0, 0.05, 96);
  const auto n = static_cast<Eigen::Index>(tpa.grid.signal.count);
  const auto r = static_cast<Eigen::Index>(amplitudes.size());
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
    const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, r);
    return Eigen::MatrixXcd(sq.cwiseInverse().asDiagonal() * q);
  };
  const Eigen::MatrixXcd u = basis();
  const Eigen::MatrixXcd v = basis();
  tpa.values = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j < r; ++j) tpa.values += amplitudes[static_cast<std::size_t>(j)] * u.col(j) * v.col(j).transpose();
  tpa.normalization = spdc::Normalization::Physical;
  tpa.omega_p0 = 2.0;
  return tpa;
}

Outcome criterion7() {
  const auto rank2 = analysis::schmidt_decompose(constructed_state({0.8, 0.6}, 5), false);
  const double e1 = std::abs(rank2.weights[0] - 0.64);
  const double e2 = std::abs(rank2.weights[1] - 0.36);
  double worst = std::max(e1, e2);
  for (std::size_t m : {2u, 4u, 8u}) {
    const std::vector<double> uniform(m, 1.0 / static_cast<double>(m));
    worst = std::max(worst, std::abs(analysis::entropy(uniform) - std::log2(static_cast<double>(m))));
    worst = std::max(worst, std::abs(analysis::cooperativity(uniform) - static_cast<double>(m)));
    const auto sch = analysis::schmidt_decompose(constructed_state(std::vector<double>(m, 1.0), 11 + m), false);
    worst = std::max(worst, std::abs(analysis::entropy(sch) - std::log2(static_cast<double>(m))));
    worst = std::max(worst, std::abs(analysis::cooperativity(sch) - static_cast<double>(m)));
  }
  return {worst <= kSchmidtTol, "weights " + fmt(rank2.weights[0]) + " " + fmt(rank2.weights[1]) +
                                    " max_error " + fmt(worst)};
}

Outcome criterion8() {
  const auto& st = degenerate();
  if (!st) return {false, "no degenerate structure within the search budget"};
  const double dw = st->layout.delta_omega;
  const auto m2 = spdc::superpose_pinholes(st->tpa, {2, dw, 0.0});
  const auto m8 = spdc::superpose_pinholes(st->tpa, {8, dw, 0.0});
  const double k2 = analysis::cooperativity(analysis::schmidt_decompose(m2, false));
  const double rms2 = analysis::sum_time_rms(analysis::temporal_amplitude(m2));
  const double rms8 = analysis::sum_time_rms(analysis::temporal_amplitude(m8));
  const double tau0 = kTwoPi / (8.0 * dw);
  const auto axis = UniformAxis::linspace(tau0 - 0.4 * 63.5, tau0 + 0.4 * 63.5, 128);
  const auto tau = axis.values();
  const auto pat = analysis::franson_rate(m8, tau, tau);
  const auto fo = analysis::fringe_orientation(pat.rate, axis.step, axis.step);
  const bool ok = std::abs(k2 - kTwoPinholeK) <= kTwoPinholeTol && rms8 < rms2 &&
                  std::abs(fo.fringe_deg - kFringeDeg) <= kFringeTol;
  return {ok, "K2 " + fmt(k2) + " rms2_fs " + fmt(rms2) + " rms8_fs " + fmt(rms8) + " fringe_deg " + fmt(fo.fringe_deg)};
}

double marginal_rms(const Eigen::VectorXd& m, const UniformAxis& axis) {
  double w = 0.0, m1 = 0.0, m2 = 0.0;
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    const double x = axis.at(static_cast<std::size_t>(k));
    w += m[k];
    m1 += m[k] * x;
    m2 += m[k] * x * x;
  }
  m1 /= w;
  return std::sqrt(m2 / w - m1 * m1);
}

Outcome criterion9() {
  const auto& st = degenerate();
  if (!st) return {false, "no degenerate structure within the search budget"};
  const auto tm = analysis::temporal_amplitude(st->tpa);
  const double lhs = analysis::squared_norm(tm);
  const double rhs = analysis::weighted_spectral_norm(st->tpa, tm.omega_s0, tm.omega_i0);
  const double parseval = std::abs(lhs - rhs) / rhs;

  // |phi|^2 with standard deviation sigma along each axis; |phi(t)|^2 then has 1 / (2 sigma).
  const double sigma = 0.002;
  const double c = 1.88;
  spdc::TwoPhotonAmplitude g;
  g.grid = spdc::FrequencyGrid::square_around(c, 12.0 * sigma, 256);
  g.values.resize(256, 256);
  for (std::size_t k = 0; k < 256; ++k) {
    for (std::size_t l = 0; l < 256; ++l) {
      const double ds = g.grid.signal.at(k) - c;
      const double di = g.grid.idler.at(l) - c;
      g.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) =
          std::exp(-(ds * ds + di * di) / (4.0 * sigma * sigma));
    }
  }
  g.normalization = spdc::Normalization::Physical;
  g.omega_p0 = 2.0 * c;
  const auto gt = analysis::temporal_amplitude(g);
  const Eigen::VectorXd spec = g.values.cwiseAbs2().rowwise().sum();
  const Eigen::VectorXd time = gt.values.cwiseAbs2().rowwise().sum();
  const double product = marginal_rms(spec, g.grid.signal) * marginal_rms(time, gt.ts);
  const double width_err = std::abs(product - 0.5) / 0.5;
  const double gp = std::abs(analysis::squared_norm(gt) - analysis::weighted_spectral_norm(g, gt.omega_s0, gt.omega_i0)) /
                    analysis::weighted_spectral_norm(g, gt.omega_s0, gt.omega_i0);
  return {std::max(parseval, gp) <= kParsevalTol && width_err <= kWidthProductTol,
          "parseval_rel " + fmt(parseval) + " gaussian_parseval_rel " + fmt(gp) + " width_product " +
              fmt(product) + " analytic 0.5"};
}

Outcome criterion10() {
  const auto& st = degenerate();
  if (!st) return {false, "no degenerate structure within the search budget"};
  const double dw = st->layout.delta_omega;
  const auto m8 = spdc::superpose_pinholes(st->tpa, {8, dw, 0.0});
  const std::vector<double> zero{0.0};
  double origin_err = 0.0;
  for (const auto* s : {&st->tpa, &m8}) {
    origin_err = std::max(origin_err, std::abs(analysis::franson_rate(*s, zero, zero).rate(0, 0) - 1.0));
  }
  // Twenty single-photon coherence times, well inside the grid period 2 pi / d_omega.
  const double far = 20.0 * kTwoPi / st->match.peaks.front().fwhm_omega;
  const std::vector<double> ts{far, far, -far};
  const std::vector<double> ti{far, 1.3 * far, far};
  const auto pat = analysis::franson_rate(st->tpa, ts, ti);
  double worst = 0.0;
  for (Eigen::Index a = 0; a < 3; ++a) worst = std::max(worst, std::abs(pat.rate(a, a) - kFransonBaseline));
  return {origin_err <= kFransonOriginTol && worst <= kFransonBaselineTol,
          "R(0,0)-1 " + fmt(origin_err) + " far_delay_fs " + fmt(far) + " max_baseline_error " + fmt(worst)};
}

// Dominant angular frequency of a uniformly sampled series, refined on a fine scan.
double dominant_frequency(const std::vector<double>& t, const std::vector<double>& y, double lo, double hi) {
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double best = lo;
  double best_p = -1.0;
  const std::size_t n = 4001;
  for (std::size_t k = 0; k < n; ++k) {
    const double w = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < t.size(); ++j) acc += (y[j] - mean) * std::polar(1.0, -w * t[j]);
    if (std::norm(acc) > best_p) {
      best_p = std::norm(acc);
      best = w;
    }
  }
  return best;
}

Outcome criterion11() {
  auto m = ensemble::select_two_peak(default_space(), kSearchBudget);
  if (!m) return {false, "no two-peak structure within the search budget"};
  const auto& a = m->peaks[0];
  const auto& b = m->peaks[1];
  const auto grid = spdc::FrequencyGrid::covering(a, b);
  const auto raw = spdc::two_photon_amplitude(m->stack, pump_at(a.omega_c + b.omega_c), {}, grid);
  const auto tpa = spdc::bandpass_filter(raw, spdc::peak_windows(m->peaks));
  const auto tm = analysis::temporal_amplitude(tpa);
  const auto ns = analysis::resolved_maxima(analysis::photon_flux(tm, analysis::Field::Signal).flux).size();
  const auto ni = analysis::resolved_maxima(analysis::photon_flux(tm, analysis::Field::Idler).flux).size();
  const double split = std::abs(a.omega_c - b.omega_c);
  const double expected = kTwoPi / split;
  const auto tau = UniformAxis::linspace(-6.0 * expected, 6.0 * expected, 1201).values();
  const auto hom = analysis::hom_rate(tpa, tau);
  const double measured = kTwoPi / dominant_frequency(tau, hom.rate, 0.5 * split, 1.5 * split);
  const double rel = std::abs(measured - expected) / expected;
  const bool ok = ns >= kMinFluxMaxima && ni >= kMinFluxMaxima && rel <= kHomPeriodTol;
  return {ok, "structure " + std::to_string(m->index) + " fwhm_ratio " + fmt(a.fwhm_omega / b.fwhm_omega) +
                  " flux_maxima " + std::to_string(ns) + "/" + std::to_string(ni) + " hom_period_fs " +
                  fmt(measured) + " expected " + fmt(expected) + " rel " + fmt(rel)};
}

// Shard bounds and worker count describe how a run was scheduled, not what it
// computed; they are left out of the config digest too.
std::string report_bytes(ensemble::EnsembleReport r) {
  r.config.workers = 1;
  r.config.first = 0;
  r.config.last = 0;
  std::ostringstream out;
  out << ensemble::report_to_json(r).dump() << '\n';
  ensemble::write_records_jsonl(r, out);
  return out.str();
}

Outcome criterion12() {
  ensemble::EnsembleConfig base;
  base.master_seed = 7;
  base.count = kShardCount;
  base.theta_rad = {0.0, deg_to_rad(30.0)};
  base.enhancement = true;
  auto sharded = [&](std::size_t workers) {
    std::optional<ensemble::EnsembleReport> merged;
    const std::size_t per = kShardCount / workers;
    for (std::size_t s = 0; s < workers; ++s) {
      auto c = base;
      c.workers = workers;
      c.first = s * per;
      c.last = s + 1 == workers ? kShardCount : (s + 1) * per;
      auto r = ensemble::run_campaign(c);
      merged = merged ? ensemble::merge_reports(*merged, r) : r;
    }
    return report_bytes(*merged);
  };
  const std::string one = sharded(1);
  bool same = true;
  for (std::size_t w : {2u, 8u}) {
    same = same && sharded(w) == one;
    auto c = base;
    c.workers = w;
    same = same && report_bytes(ensemble::run_campaign(c)) == one;
  }
  return {same, "structures " + std::to_string(kShardCount) + " digest " + digest_hex(one) +
                    (same ? " identical" : " differs")};
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, criterion1},  {2, criterion2},  {3, criterion3},  {4, criterion4},
      {5, criterion5},  {6, criterion6},  {7, criterion7},  {8, criterion8},
      {9, criterion9},  {10, criterion10}, {11, criterion11}, {12, criterion12}};
  int failures = 0;
  for (const auto& [id, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %d %s: %s [%.1f s]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), seconds_since(t0));
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
