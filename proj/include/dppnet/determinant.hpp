#ifndef DPPNET_DETERMINANT_HPP
#define DPPNET_DETERMINANT_HPP

#include <Eigen/Core>

namespace dppnet {

// Determinant of a symmetric PSD Gram matrix via pivoted LDL^T.
// Tiny negative results from roundoff (within -1e-12 * prod of diagonal)
// are clamped to zero; exact kernel Gram matrices are PSD.
// Throws NumericError on non-finite entries, ConfigError if not symmetric.
double psd_det(const Eigen::MatrixXd& gram);

// Determinants of all leading principal minors of a PSD matrix, computed by
// one unpivoted Cholesky sweep: out[k] = det(gram.topLeftCorner(k+1, k+1)).
// Once a minor hits zero (rank deficiency), all larger minors are zero by
// Fischer's inequality and are reported as such.
Eigen::ArrayXd leading_minor_dets(const Eigen::MatrixXd& gram);

}  // namespace dppnet

#endif
