#include "rspdc/analysis/schmidt.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "rspdc/errors.hpp"

namespace rspdc::analysis {

SchmidtResult schmidt_decompose(const spdc::TwoPhotonAmplitude& tpa, bool compute_modes) {
  if (tpa.values.size() == 0) throw NumericalError("Schmidt decomposition of an empty amplitude");
  if (!tpa.values.allFinite()) throw NumericalError("Schmidt decomposition of a non-finite amplitude");
  const auto ws = trapezoid_weights(tpa.grid.signal);
  const auto wi = trapezoid_weights(tpa.grid.idler);
  Eigen::VectorXd sqs(static_cast<Eigen::Index>(ws.size()));
  Eigen::VectorXd sqi(static_cast<Eigen::Index>(wi.size()));
  for (std::size_t k = 0; k < ws.size(); ++k) sqs[static_cast<Eigen::Index>(k)] = std::sqrt(ws[k]);
  for (std::size_t l = 0; l < wi.size(); ++l) sqi[static_cast<Eigen::Index>(l)] = std::sqrt(wi[l]);

  const Eigen::MatrixXcd m = sqs.asDiagonal() * tpa.values * sqi.asDiagonal();
  const unsigned opts = compute_modes ? (Eigen::ComputeThinU | Eigen::ComputeThinV) : 0u;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, opts);
  const Eigen::VectorXd sv = svd.singularValues();
  const double total = sv.squaredNorm();
  if (!(total > 0.0)) throw NumericalError("Schmidt decomposition of an all-zero amplitude");

  SchmidtResult out;
  out.scale = std::sqrt(total);
  out.signal_axis = tpa.grid.signal;
  out.idler_axis = tpa.grid.idler;
  const auto rank = static_cast<std::size_t>(sv.size());
  out.weights.resize(rank);
  out.amplitudes.resize(rank);
  for (std::size_t n = 0; n < rank; ++n) {
    const double s = sv[static_cast<Eigen::Index>(n)];
    out.weights[n] = s * s / total;
    out.amplitudes[n] = s / out.scale;
  }
  if (compute_modes) {
    out.signal_modes = sqs.cwiseInverse().asDiagonal() * svd.matrixU();
    out.idler_modes = sqi.cwiseInverse().asDiagonal() * svd.matrixV().conjugate();
  }
  return out;
}

Eigen::MatrixXcd reconstruct(const SchmidtResult& schmidt, std::size_t modes) {
  if (schmidt.signal_modes.size() == 0) {
    throw ValidationError("reconstruct needs a decomposition computed with modes");
  }
  const std::size_t n = modes == 0 ? schmidt.rank() : std::min(modes, schmidt.rank());
  Eigen::VectorXd lam(static_cast<Eigen::Index>(n));
  for (std::size_t q = 0; q < n; ++q) {
    lam[static_cast<Eigen::Index>(q)] = schmidt.scale * schmidt.amplitudes[q];
  }
  const auto ni = static_cast<Eigen::Index>(n);
  return schmidt.signal_modes.leftCols(ni) * lam.asDiagonal() *
         schmidt.idler_modes.leftCols(ni).transpose();
}

double entropy(std::span<const double> weights) {
  double s = 0.0;
  for (double w : weights) {
    if (w > 0.0) s -= w * std::log2(w);
  }
  return s;
}

double entropy(const SchmidtResult& schmidt) { return entropy(schmidt.weights); }

double cooperativity(std::span<const double> weights) {
  double sum = 0.0;
  for (double w : weights) sum += w * w;
  if (!(sum > 0.0)) throw NumericalError("cooperativity of empty weights");
  return 1.0 / sum;
}

double cooperativity(const SchmidtResult& schmidt) { return cooperativity(schmidt.weights); }

}  // namespace rspdc::analysis
