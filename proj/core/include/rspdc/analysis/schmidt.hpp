#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "rspdc/spdc/amplitude.hpp"

namespace rspdc::analysis {

/// phi(w_s, w_i) = scale * sum_n lambda_n f_s,n(w_s) f_i,n(w_i).
///
/// Modes are sampled on the amplitude's grids and orthonormal under its
/// trapezoid quadrature; weights lambda_n^2 are descending and sum to one.
struct SchmidtResult {
  std::vector<double> weights;     // lambda_n^2
  std::vector<double> amplitudes;  // lambda_n
  Eigen::MatrixXcd signal_modes;   // column n is f_s,n
  Eigen::MatrixXcd idler_modes;    // column n is f_i,n
  double scale = 0.0;              // sqrt of the quadrature norm of phi
  UniformAxis signal_axis;
  UniformAxis idler_axis;

  std::size_t rank() const { return weights.size(); }
};

/// SVD of sqrt(w_s) phi sqrt(w_i). With compute_modes = false only the
/// weights are filled (cheaper, used inside optimisation loops).
/// Throws NumericalError for an all-zero or non-finite amplitude.
SchmidtResult schmidt_decompose(const spdc::TwoPhotonAmplitude& tpa, bool compute_modes = true);

/// Rebuilds phi from the first `modes` terms (all when zero).
Eigen::MatrixXcd reconstruct(const SchmidtResult& schmidt, std::size_t modes = 0);

/// -sum w log2 w, with 0 log 0 = 0.
double entropy(std::span<const double> weights);
double entropy(const SchmidtResult& schmidt);

/// 1 / sum w^2.
double cooperativity(std::span<const double> weights);
double cooperativity(const SchmidtResult& schmidt);

}  // namespace rspdc::analysis
