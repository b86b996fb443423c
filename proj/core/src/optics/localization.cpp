#include "rspdc/optics/localization.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "rspdc/errors.hpp"
#include "rspdc/optics/transfer_matrix.hpp"

namespace rspdc::optics {

namespace {

constexpr double kTransparentThreshold = 1e-12;

double xi_from_means(double mean_l, double mean_ln_t) {
  if (mean_ln_t > -kTransparentThreshold) return std::numeric_limits<double>::infinity();
  return -2.0 * mean_l / mean_ln_t;
}

}  // namespace

LocalizationEstimate estimate_localization(std::span<const double> ln_t,
                                           std::span<const double> optical_length_um,
                                           std::size_t bootstrap_samples,
                                           std::uint64_t bootstrap_seed) {
  if (ln_t.size() != optical_length_um.size()) {
    throw ValidationError("estimate_localization: size mismatch");
  }
  LocalizationEstimate est;
  std::vector<double> lt, lo;
  lt.reserve(ln_t.size());
  lo.reserve(ln_t.size());
  for (std::size_t i = 0; i < ln_t.size(); ++i) {
    if (!std::isfinite(ln_t[i])) {
      ++est.excluded;
      continue;
    }
    lt.push_back(ln_t[i]);
    lo.push_back(optical_length_um[i]);
  }
  est.used = lt.size();
  if (lt.empty()) throw NumericalError("no structure with nonzero transmittance");

  double sum_t = 0.0, sum_l = 0.0;
  for (std::size_t i = 0; i < lt.size(); ++i) {
    sum_t += lt[i];
    sum_l += lo[i];
  }
  const double n = static_cast<double>(lt.size());
  est.mean_ln_t = sum_t / n;
  est.mean_optical_length_um = sum_l / n;
  est.xi_um = xi_from_means(est.mean_optical_length_um, est.mean_ln_t);

  if (!std::isfinite(est.xi_um)) {
    est.stderr_um = std::numeric_limits<double>::infinity();
    return est;
  }
  if (bootstrap_samples < 2 || lt.size() < 2) return est;

  std::mt19937_64 rng(bootstrap_seed);
  std::uniform_int_distribution<std::size_t> pick(0, lt.size() - 1);
  double acc = 0.0, acc2 = 0.0;
  for (std::size_t b = 0; b < bootstrap_samples; ++b) {
    double st = 0.0, sl = 0.0;
    for (std::size_t i = 0; i < lt.size(); ++i) {
      const std::size_t j = pick(rng);
      st += lt[j];
      sl += lo[j];
    }
    const double xi = xi_from_means(sl / n, st / n);
    acc += xi;
    acc2 += xi * xi;
  }
  const double m = static_cast<double>(bootstrap_samples);
  const double var = (acc2 - acc * acc / m) / (m - 1.0);
  est.stderr_um = std::sqrt(std::max(var, 0.0));
  return est;
}

LocalizationEstimate localization_length(std::span<const LayerStack> stacks, double omega,
                                         double theta_ext, std::size_t bootstrap_samples,
                                         std::uint64_t bootstrap_seed) {
  if (stacks.size() < 100) throw ValidationError("localization_length needs at least 100 stacks");
  const double s = std::sin(theta_ext);
  if (!(std::abs(s) < 1.0)) throw DomainError("evanescent input angle");
  std::vector<double> ln_t(stacks.size()), l_opt(stacks.size());
  for (std::size_t i = 0; i < stacks.size(); ++i) {
    const auto t = transmission_amplitude(resolve(stacks[i], omega), omega, s);
    const double T = std::norm(t);
    ln_t[i] = T > 0.0 ? std::log(T) : -std::numeric_limits<double>::infinity();
    l_opt[i] = stacks[i].optical_length(omega);
  }
  return estimate_localization(ln_t, l_opt, bootstrap_samples, bootstrap_seed);
}

}  // namespace rspdc::optics
