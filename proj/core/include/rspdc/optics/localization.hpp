#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "rspdc/optics/layer_stack.hpp"

namespace rspdc::optics {

struct LocalizationEstimate {
  double xi_um = 0.0;       // optical localization length; +inf when <ln T> = 0
  double stderr_um = 0.0;   // bootstrap standard error over structures
  double mean_ln_t = 0.0;
  double mean_optical_length_um = 0.0;
  std::size_t used = 0;
  std::size_t excluded = 0;  // structures with T == 0 numerically
};

/// xi = -2 <L_opt> / <ln T> from per-structure samples. L_opt is the optical
/// length measured along the stack normal (sum of n d). Bootstrap resamples
/// are drawn from a generator seeded with `bootstrap_seed`.
LocalizationEstimate estimate_localization(std::span<const double> ln_t,
                                           std::span<const double> optical_length_um,
                                           std::size_t bootstrap_samples = 200,
                                           std::uint64_t bootstrap_seed = 0);

/// Solves every stack at (omega, theta_ext) and applies estimate_localization.
/// Requires at least 100 stacks.
LocalizationEstimate localization_length(std::span<const LayerStack> stacks, double omega,
                                         double theta_ext, std::size_t bootstrap_samples = 200,
                                         std::uint64_t bootstrap_seed = 0);

}  // namespace rspdc::optics
