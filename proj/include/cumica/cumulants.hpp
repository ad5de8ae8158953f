#pragma once

#include <vector>

#include "cumica/linalg.hpp"

namespace cumica {

/// Observations are rows. Requires n > p >= 2 and finite entries.
void validate_data(const Matrix& x);

/// Sample covariance with divisor n.
Matrix sample_covariance(const Matrix& x);

/// Whitened sample xst = (x - mean) W^T with W = `whitener`.
struct StandardizedSample {
  Matrix xst;
  Vector mean;
  Matrix whitener;

  Eigen::Index n() const { return xst.rows(); }
  Eigen::Index p() const { return xst.cols(); }
};

/// Symmetric standardization with the inverse square root of the sample
/// covariance.
StandardizedSample standardize(const Matrix& x);

/// Standardization by a caller-supplied unmixing matrix. Rows of `w0` are
/// rescaled to unit sample variance; `w0` must whiten the data up to those
/// scales (any independent component estimate does). Throws
/// SingularCustomWhitener when `w0` is singular or does not decorrelate.
StandardizedSample standardize(const Matrix& x, const Matrix& w0);

struct ProjectionCumulants {
  double gamma = 0.0;
  double kappa = 0.0;
};

/// Sample skewness and excess kurtosis of u^T xst for a unit vector u.
ProjectionCumulants projection_cumulants(const StandardizedSample& s, const Vector& u);

/// Sample third-cumulant matrix mean(x_i x x^T). `i` is zero-based.
Matrix cum3_matrix(const StandardizedSample& s, Eigen::Index i);

/// Sample fourth-cumulant matrix C^{4ij}, symmetrized. Indices are zero-based.
Matrix cum4_matrix(const StandardizedSample& s, Eigen::Index i, Eigen::Index j);

struct CompoundMatrices {
  Matrix c3;
  Matrix c4;
};

/// C3 = sum_i C^{3i} and C4 = sum_i C^{4ii}, accumulated in index order.
CompoundMatrices compound_matrices(const StandardizedSample& s);

/// All p third-cumulant matrices, index order i = 0..p-1.
std::vector<Matrix> all_cum3_matrices(const StandardizedSample& s);

/// All p^2 fourth-cumulant matrices in row-major (i, j) order.
std::vector<Matrix> all_cum4_matrices(const StandardizedSample& s);

}  // namespace cumica
