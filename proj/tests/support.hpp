#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "cumica/distributions.hpp"
#include "cumica/linalg.hpp"
#include "cumica/random.hpp"

namespace cumica::testing {

inline Matrix draw_sources(const std::vector<SourceSpec>& sources, std::size_t n, std::uint64_t seed) {
  RngStream rng(seed);
  Matrix z(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(sources.size()));
  for (std::size_t k = 0; k < sources.size(); ++k) z.col(static_cast<Eigen::Index>(k)) = sample_source(sources[k], n, rng);
  return z;
}

inline Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  RngStream rng(seed);
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

// Smallest max-abs difference between a and P J b over all signed row
// permutations P J, by brute force.
inline double signed_permutation_distance(const Matrix& a, const Matrix& b) {
  const int p = static_cast<int>(a.rows());
  std::vector<int> perm(p);
  std::iota(perm.begin(), perm.end(), 0);
  double best = INFINITY;
  do {
    double worst = 0.0;
    for (int i = 0; i < p && worst < best; ++i) {
      const double plus = (a.row(i) - b.row(perm[i])).cwiseAbs().maxCoeff();
      const double minus = (a.row(i) + b.row(perm[i])).cwiseAbs().maxCoeff();
      worst = std::max(worst, std::min(plus, minus));
    }
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Relative version, scaled by the largest entry of b.
inline double signed_permutation_rel_distance(const Matrix& a, const Matrix& b) {
  return signed_permutation_distance(a, b) / b.cwiseAbs().maxCoeff();
}

}  // namespace cumica::testing
