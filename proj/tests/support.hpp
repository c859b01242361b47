#pragma once

#include <Eigen/Dense>

#include "lieflow/random.hpp"
#include "lieflow/so_n.hpp"

namespace lieflow::testing {

inline SkewMatrix<double> random_skew(Rng& rng, Eigen::Index n, double scale = 1.0) {
  return SkewMatrix<double>(Eigen::MatrixXd(scale * rng.normal_matrix(n, n)));
}

/// Haar-ish random rotation: QR of a Gaussian matrix with the sign of the
/// R diagonal folded into Q, reflected if needed to land in SO(n).
inline RotationMatrix<double> random_rotation(Rng& rng, Eigen::Index n) {
  Eigen::MatrixXd a = rng.normal_matrix(n, n);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) *= -1.0;
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return RotationMatrix<double>(q);
}

inline double frob_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).norm();
}

}  // namespace lieflow::testing
