#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rspdc/optics/material.hpp"

namespace rspdc::optics {

struct Layer {
  std::size_t material = 0;  // index into LayerStack::materials()
  double thickness_um = 0.0;
};

/// How a stack came to be. Zero-initialised for hand-built stacks.
struct StackProvenance {
  std::uint64_t seed = 0;
  double lambda0_um = 1.0;
  std::size_t n_elem = 0;
  double jitter_sigma_um = 0.0;
  std::size_t resamples = 0;
};

/// Ordered dielectric layers between two vacuum half-spaces.
///
/// Invariants (checked on construction): every thickness is positive and
/// adjacent layers are made of different materials.
class LayerStack {
 public:
  LayerStack() = default;
  LayerStack(std::vector<Material> materials, std::vector<Layer> layers,
             StackProvenance provenance = {});

  /// Builds a stack from (material, thickness) pairs, deduplicating materials
  /// by id and merging equal neighbours.
  static LayerStack from_layers(const std::vector<std::pair<Material, double>>& layers,
                                StackProvenance provenance = {});

  std::span<const Material> materials() const { return materials_; }
  std::span<const Layer> layers() const { return layers_; }
  const Material& material_of(std::size_t layer) const { return materials_[layers_[layer].material]; }
  const StackProvenance& provenance() const { return provenance_; }

  std::size_t size() const { return layers_.size(); }
  bool empty() const { return layers_.empty(); }
  static constexpr double ambient_index() { return 1.0; }

  /// Number of internal material boundaries.
  std::size_t boundary_count() const { return layers_.empty() ? 0 : layers_.size() - 1; }
  double total_thickness() const;
  /// Sum of n(omega) * thickness.
  double optical_length(double omega) const;
  /// Total thickness of layers with nonzero chi2.
  double nonlinear_thickness() const;

  /// Layers of this followed by layers of other (equal neighbours merged).
  LayerStack concatenated(const LayerStack& other) const;
  /// Every thickness multiplied by factor.
  LayerStack scaled(double factor) const;
  /// Same geometry, every material's chi2 multiplied by factor.
  LayerStack with_chi2_scaled(double factor) const;

  friend bool operator==(const LayerStack&, const LayerStack&);

 private:
  std::vector<Material> materials_;
  std::vector<Layer> layers_;
  StackProvenance provenance_;
};

bool operator==(const Material& a, const Material& b);

}  // namespace rspdc::optics
