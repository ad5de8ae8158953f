#pragma once

#include <random>

namespace cumica {

template <typename Rng>
Matrix random_orthogonal(int p, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(p, p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < p; ++i) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(p, p);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Sign fix on R's diagonal makes Q Haar distributed.
  for (int j = 0; j < p; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace cumica
