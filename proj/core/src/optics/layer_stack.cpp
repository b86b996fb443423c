#include "rspdc/optics/layer_stack.hpp"

#include <string>

#include "rspdc/errors.hpp"

namespace rspdc::optics {

bool operator==(const Material& a, const Material& b) {
  if (a.id != b.id || a.chi2_pm_per_v != b.chi2_pm_per_v) return false;
  if (a.dispersion.index() != b.dispersion.index()) return false;
  if (const auto* ca = std::get_if<ConstantIndex>(&a.dispersion)) {
    return ca->n == std::get<ConstantIndex>(b.dispersion).n;
  }
  const auto& sa = std::get<Sellmeier>(a.dispersion);
  const auto& sb = std::get<Sellmeier>(b.dispersion);
  return sa.a == sb.a && sa.b == sb.b && sa.c == sb.c && sa.d == sb.d;
}

bool operator==(const LayerStack& a, const LayerStack& b) {
  if (a.materials_.size() != b.materials_.size() || a.layers_.size() != b.layers_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.materials_.size(); ++i) {
    if (!(a.materials_[i] == b.materials_[i])) return false;
  }
  for (std::size_t i = 0; i < a.layers_.size(); ++i) {
    if (a.layers_[i].material != b.layers_[i].material ||
        a.layers_[i].thickness_um != b.layers_[i].thickness_um) {
      return false;
    }
  }
  return true;
}

LayerStack::LayerStack(std::vector<Material> materials, std::vector<Layer> layers,
                       StackProvenance provenance)
    : materials_(std::move(materials)), layers_(std::move(layers)), provenance_(provenance) {
  for (const auto& m : materials_) validate_material(m);
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const auto& layer = layers_[i];
    if (layer.material >= materials_.size()) {
      throw ValidationError("layer " + std::to_string(i) + " references an unknown material");
    }
    if (!(layer.thickness_um > 0.0)) {
      throw ValidationError("layer " + std::to_string(i) + " has non-positive thickness");
    }
    if (i > 0 && materials_[layers_[i - 1].material].id == materials_[layer.material].id) {
      throw ValidationError("layers " + std::to_string(i - 1) + " and " + std::to_string(i) +
                            " share material " + materials_[layer.material].id);
    }
  }
}

LayerStack LayerStack::from_layers(const std::vector<std::pair<Material, double>>& layers,
                                   StackProvenance provenance) {
  std::vector<Material> materials;
  std::vector<Layer> out;
  for (const auto& [material, thickness] : layers) {
    std::size_t idx = materials.size();
    for (std::size_t m = 0; m < materials.size(); ++m) {
      if (materials[m].id == material.id) {
        idx = m;
        break;
      }
    }
    if (idx == materials.size()) materials.push_back(material);
    if (!out.empty() && out.back().material == idx) {
      out.back().thickness_um += thickness;
    } else {
      out.push_back({idx, thickness});
    }
  }
  return LayerStack(std::move(materials), std::move(out), provenance);
}

double LayerStack::total_thickness() const {
  double sum = 0.0;
  for (const auto& l : layers_) sum += l.thickness_um;
  return sum;
}

double LayerStack::optical_length(double omega) const {
  std::vector<double> n(materials_.size());
  for (std::size_t m = 0; m < materials_.size(); ++m) n[m] = refractive_index(materials_[m], omega);
  double sum = 0.0;
  for (const auto& l : layers_) sum += n[l.material] * l.thickness_um;
  return sum;
}

double LayerStack::nonlinear_thickness() const {
  double sum = 0.0;
  for (const auto& l : layers_) {
    if (materials_[l.material].chi2_pm_per_v > 0.0) sum += l.thickness_um;
  }
  return sum;
}

LayerStack LayerStack::concatenated(const LayerStack& other) const {
  std::vector<std::pair<Material, double>> all;
  all.reserve(size() + other.size());
  for (std::size_t i = 0; i < size(); ++i) all.emplace_back(material_of(i), layers_[i].thickness_um);
  for (std::size_t i = 0; i < other.size(); ++i) {
    all.emplace_back(other.material_of(i), other.layers_[i].thickness_um);
  }
  return from_layers(all);
}

LayerStack LayerStack::scaled(double factor) const {
  if (!(factor > 0.0)) throw ValidationError("scale factor must be positive");
  auto layers = layers_;
  for (auto& l : layers) l.thickness_um *= factor;
  return LayerStack(materials_, std::move(layers), provenance_);
}

LayerStack LayerStack::with_chi2_scaled(double factor) const {
  auto materials = materials_;
  for (auto& m : materials) m.chi2_pm_per_v *= factor;
  return LayerStack(std::move(materials), layers_, provenance_);
}

}  // namespace rspdc::optics
