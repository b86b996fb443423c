#include "rspdc/optics/generator.hpp"

#include <random>
#include <vector>

#include "rspdc/errors.hpp"
#include "rspdc/units.hpp"

namespace rspdc::optics {

void GeneratorParams::validate() const {
  if (!(lambda0_um > 0.0)) throw ValidationError("lambda0 must be positive");
  if (n_elem < 1) throw ValidationError("n_elem must be >= 1");
  if (!(jitter_sigma_um >= 0.0)) throw ValidationError("jitter_sigma must be >= 0");
  if (!(jitter_sigma_um < lambda0_um / 8.0)) {
    throw ValidationError("jitter_sigma must be below lambda0/8");
  }
}

LayerStack generate_random_stack(const GeneratorParams& params) {
  params.validate();
  constexpr std::size_t kMaxResamples = 100000;

  std::mt19937_64 rng(params.seed);
  std::vector<Material> materials{lithium_niobate(), silica()};
  const double omega0 = omega_from_wavelength(params.lambda0_um);
  const double index[2] = {refractive_index(materials[0], omega0),
                           refractive_index(materials[1], omega0)};
  const double slot_optical = params.lambda0_um / 4.0;

  std::vector<Layer> layers;
  for (std::size_t slot = 0; slot < params.n_elem; ++slot) {
    const std::size_t m = rng() >> 63;
    if (!layers.empty() && layers.back().material == m) {
      layers.back().thickness_um += 1.0;  // slot count for now
    } else {
      layers.push_back({m, 1.0});
    }
  }
  for (auto& l : layers) l.thickness_um = l.thickness_um * slot_optical / index[l.material];

  std::size_t resamples = 0;
  if (params.jitter_sigma_um > 0.0) {
    std::normal_distribution<double> shift(0.0, params.jitter_sigma_um);
    for (std::size_t b = 0; b + 1 < layers.size(); ++b) {
      Layer& left = layers[b];
      Layer& right = layers[b + 1];
      for (;;) {
        const double delta = shift(rng);
        // Positive shifts eat into the right layer, negative into the left.
        const double dz = delta >= 0.0 ? delta / index[right.material] : delta / index[left.material];
        if (left.thickness_um + dz > 0.0 && right.thickness_um - dz > 0.0) {
          left.thickness_um += dz;
          right.thickness_um -= dz;
          break;
        }
        if (++resamples > kMaxResamples) {
          throw ValidationError("boundary jitter keeps closing layers; reduce jitter_sigma");
        }
      }
    }
  }

  StackProvenance prov{params.seed, params.lambda0_um, params.n_elem, params.jitter_sigma_um,
                       resamples};
  return LayerStack(std::move(materials), std::move(layers), prov);
}

}  // namespace rspdc::optics
