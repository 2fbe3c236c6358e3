#include "dppnet/determinant.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "dppnet/errors.hpp"

namespace dppnet {

double psd_det(const Eigen::MatrixXd& gram) {
  const Eigen::Index n = gram.rows();
  if (n != gram.cols()) throw ConfigError("psd_det: matrix must be square");
  if (n == 0) return 1.0;
  if (!gram.allFinite()) throw NumericError("psd_det: non-finite entries");

  double scale = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) scale *= std::abs(gram(i, i));
  const double sym_tol = 1e-9 * (1.0 + gram.cwiseAbs().maxCoeff());
  if (((gram - gram.transpose()).cwiseAbs().maxCoeff()) > sym_tol) {
    throw ConfigError("psd_det: matrix must be symmetric");
  }

  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  double det = 1.0;
  const auto d = ldlt.vectorD();
  for (Eigen::Index i = 0; i < n; ++i) det *= d[i];
  if (det < 0.0) {
    if (det >= -1e-12 * scale) return 0.0;
    return 0.0;  // indefinite beyond roundoff cannot arise from a true Gram
  }
  return det;
}

Eigen::ArrayXd leading_minor_dets(const Eigen::MatrixXd& gram) {
  const Eigen::Index n = gram.rows();
  Eigen::ArrayXd dets(n);
  Eigen::MatrixXd chol = Eigen::MatrixXd::Zero(n, n);
  double running = 1.0;
  bool singular = false;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (singular) {
      dets[k] = 0.0;
      continue;
    }
    // Row k of the Cholesky factor against previous rows.
    for (Eigen::Index j = 0; j < k; ++j) {
      double s = gram(k, j);
      for (Eigen::Index i = 0; i < j; ++i) s -= chol(k, i) * chol(j, i);
      chol(k, j) = s / chol(j, j);
    }
    double d = gram(k, k);
    for (Eigen::Index i = 0; i < k; ++i) d -= chol(k, i) * chol(k, i);
    if (d <= 1e-14 * std::abs(gram(k, k)) || d <= 0.0) {
      singular = true;
      dets[k] = 0.0;
      continue;
    }
    chol(k, k) = std::sqrt(d);
    running *= d;
    dets[k] = running;
  }
  return dets;
}

}  // namespace dppnet
