#include "rspdc/optics/transfer_matrix.hpp"

#include <cmath>
#include <sstream>

#include "rspdc/errors.hpp"
#include "rspdc/units.hpp"

namespace rspdc::optics {

namespace {

double checked_sin(double theta_ext) {
  const double s = std::sin(theta_ext);
  if (!(std::abs(s) < 1.0)) {
    std::ostringstream msg;
    msg << "external angle " << theta_ext << " rad gives an evanescent input wave";
    throw DomainError(msg.str());
  }
  return s;
}

double kz_of(double omega, double n, double sin2) {
  return omega / kSpeedOfLight * std::sqrt(n * n - sin2);
}

// Interface relation between region a (kz ka) and region b (kz kb):
// (A+, A-)_b = 0.5 [[1+eta, 1-eta], [1-eta, 1+eta]] (A+, A-)_a, eta = ka/kb.
inline void cross(cdouble& plus, cdouble& minus, double eta) {
  const cdouble p = plus;
  const cdouble m = minus;
  plus = 0.5 * ((1.0 + eta) * p + (1.0 - eta) * m);
  minus = 0.5 * ((1.0 - eta) * p + (1.0 + eta) * m);
}

}  // namespace

ResolvedStack resolve(const LayerStack& stack, double omega) {
  if (!SupportedBand::contains(omega)) {
    std::ostringstream msg;
    msg << "omega = " << omega << " rad/fs is outside the supported band "
        << SupportedBand::kMinWavelengthUm << "-" << SupportedBand::kMaxWavelengthUm << " um";
    throw DomainError(msg.str());
  }
  std::vector<double> by_material(stack.materials().size());
  for (std::size_t m = 0; m < by_material.size(); ++m) {
    by_material[m] = refractive_index(stack.materials()[m], omega);
  }
  ResolvedStack out;
  out.index.reserve(stack.size());
  out.thickness.reserve(stack.size());
  for (const auto& l : stack.layers()) {
    out.index.push_back(by_material[l.material]);
    out.thickness.push_back(l.thickness_um);
  }
  return out;
}

void solve_fields_into(const ResolvedStack& resolved, double omega, double sin_theta,
                       Incidence incidence, FieldMap& out) {
  const std::size_t n = resolved.index.size();
  const std::size_t regions = n + 2;
  const double sin2 = sin_theta * sin_theta;
  out.omega = omega;
  out.incidence = incidence;
  out.forward.resize(regions);
  out.backward.resize(regions);
  out.kz.resize(regions);
  out.thickness.resize(regions);

  const double k_vac = kz_of(omega, LayerStack::ambient_index(), sin2);
  out.kz[0] = k_vac;
  out.kz[regions - 1] = k_vac;
  out.thickness[0] = 0.0;
  out.thickness[regions - 1] = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    out.kz[j + 1] = kz_of(omega, resolved.index[j], sin2);
    out.thickness[j + 1] = resolved.thickness[j];
  }

  if (incidence == Incidence::Left) {
    // Start from the transmitted wave and walk back towards the source; the
    // solution grows in that direction, which keeps the recursion stable.
    cdouble plus{1.0, 0.0};
    cdouble minus{0.0, 0.0};
    out.forward[regions - 1] = plus;
    out.backward[regions - 1] = minus;
    for (std::size_t j = regions - 1; j-- > 0;) {
      cross(plus, minus, out.kz[j + 1] / out.kz[j]);
      const double phi = out.kz[j] * out.thickness[j];
      const cdouble e{std::cos(phi), std::sin(phi)};
      plus *= std::conj(e);
      minus *= e;
      out.forward[j] = plus;
      out.backward[j] = minus;
    }
    const cdouble scale = 1.0 / out.forward[0];
    for (std::size_t j = 0; j < regions; ++j) {
      out.forward[j] *= scale;
      out.backward[j] *= scale;
    }
    out.t = out.forward[regions - 1];
    out.r = out.backward[0];
  } else {
    cdouble plus{0.0, 0.0};
    cdouble minus{1.0, 0.0};
    out.forward[0] = plus;
    out.backward[0] = minus;
    for (std::size_t j = 0; j + 1 < regions; ++j) {
      const double phi = out.kz[j] * out.thickness[j];
      const cdouble e{std::cos(phi), std::sin(phi)};
      plus *= e;
      minus *= std::conj(e);
      cross(plus, minus, out.kz[j] / out.kz[j + 1]);
      out.forward[j + 1] = plus;
      out.backward[j + 1] = minus;
    }
    const cdouble scale = 1.0 / out.backward[regions - 1];
    for (std::size_t j = 0; j < regions; ++j) {
      out.forward[j] *= scale;
      out.backward[j] *= scale;
    }
    out.t = out.backward[0];
    out.r = out.forward[regions - 1];
  }
}

FieldMap solve_fields(const ResolvedStack& resolved, double omega, double theta_ext,
                      Incidence incidence) {
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
  FieldMap out;
  solve_fields_into(resolved, omega, checked_sin(theta_ext), incidence, out);
  out.theta_ext = theta_ext;
  return out;
}

FieldMap solve_fields(const LayerStack& stack, double omega, double theta_ext,
                      Incidence incidence) {
  const double s = checked_sin(theta_ext);
  ResolvedStack resolved = resolve(stack, omega);
  FieldMap out;
  solve_fields_into(resolved, omega, s, incidence, out);
  out.theta_ext = theta_ext;
  return out;
}

cdouble transmission_amplitude(const ResolvedStack& resolved, double omega, double sin_theta) {
  const std::size_t n = resolved.index.size();
  const double sin2 = sin_theta * sin_theta;
  const double k_vac = kz_of(omega, LayerStack::ambient_index(), sin2);
  cdouble plus{1.0, 0.0};
  cdouble minus{0.0, 0.0};
  double k_next = k_vac;
  for (std::size_t j = n; j-- > 0;) {
    const double k = kz_of(omega, resolved.index[j], sin2);
    cross(plus, minus, k_next / k);
    const double phi = k * resolved.thickness[j];
    const cdouble e{std::cos(phi), std::sin(phi)};
    plus *= std::conj(e);
    minus *= e;
    k_next = k;
  }
  cross(plus, minus, k_next / k_vac);
  return 1.0 / plus;
}

double transmittance(const LayerStack& stack, double omega, double theta_ext) {
  const double s = checked_sin(theta_ext);
  return std::norm(transmission_amplitude(resolve(stack, omega), omega, s));
}

Eigen::Matrix2cd transfer_matrix(const LayerStack& stack, double omega, double theta_ext) {
  const double s = checked_sin(theta_ext);
  const double sin2 = s * s;
  const ResolvedStack resolved = resolve(stack, omega);
  auto interface = [](double ka, double kb) {
    const double eta = ka / kb;
    Eigen::Matrix2cd m;
    m << 0.5 * (1.0 + eta), 0.5 * (1.0 - eta), 0.5 * (1.0 - eta), 0.5 * (1.0 + eta);
    return m;
  };
  const double k_vac = kz_of(omega, LayerStack::ambient_index(), sin2);
  Eigen::Matrix2cd total = Eigen::Matrix2cd::Identity();
  double k_prev = k_vac;
  for (std::size_t j = 0; j < resolved.index.size(); ++j) {
    const double k = kz_of(omega, resolved.index[j], sin2);
    total = interface(k_prev, k) * total;
    const double phi = k * resolved.thickness[j];
    Eigen::Matrix2cd prop = Eigen::Matrix2cd::Zero();
    prop(0, 0) = std::polar(1.0, phi);
    prop(1, 1) = std::polar(1.0, -phi);
    total = prop * total;
    k_prev = k;
  }
  return interface(k_prev, k_vac) * total;
}

}  // namespace rspdc::optics
