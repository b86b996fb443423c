#pragma once

#include <cstddef>
#include <cstdint>

#include "rspdc/optics/layer_stack.hpp"

namespace rspdc::optics {

struct GeneratorParams {
  double lambda0_um = 1.0;
  std::size_t n_elem = 250;
  double jitter_sigma_um = 0.025;  // std dev of the optical-length boundary shift
  std::uint64_t seed = 0;

  /// Throws ValidationError unless n_elem >= 1 and 0 <= jitter < lambda0/8.
  void validate() const;
};

/// Random LiNbO3/SiO2 stack built from n_elem quarter-wave slots.
///
/// Each slot picks a material with probability 1/2. Runs of equal material
/// are merged into one physical layer, then every material boundary is moved
/// by a Gaussian optical-length shift. A shift is converted to physical length
/// with the index (at lambda0) of the material it displaces; a shift that
/// would close a layer is redrawn and counted in provenance().resamples.
LayerStack generate_random_stack(const GeneratorParams& params);

}  // namespace rspdc::optics
