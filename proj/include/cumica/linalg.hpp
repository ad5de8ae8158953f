#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace cumica {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Eigenpairs of a symmetric matrix. Eigenvalues are sorted in descending
/// order; column j of `vectors` belongs to `values[j]` and is signed so that
/// its largest-magnitude entry is positive.
struct SymmetricEigen {
  Vector values;
  Matrix vectors;
  int sweeps = 0;
};

/// Cyclic Jacobi eigensolver for small dense symmetric matrices.
SymmetricEigen symmetric_eigen(const Matrix& s, int max_sweeps = 100);

/// Symmetric G with G S G = I. Throws NotPositiveDefinite when an eigenvalue
/// falls below 1e-12 times the largest one.
Matrix inv_sqrt_sym(const Matrix& s);

/// Orthogonal polar factor T (T^T T)^{-1/2}. Throws RankDeficient when the
/// smallest singular value is below 1e-12 times the largest.
Matrix polar_orthogonal(const Matrix& t);

struct JointDiagOptions {
  double tol = 1e-10;
  int max_sweeps = 100;
};

struct JointDiagResult {
  Matrix u;
  int sweeps = 0;
  bool converged = false;
  double objective = 0.0;
  // One entry for the starting point, then one per completed sweep.
  std::vector<double> objective_trace;
  std::vector<double> mass_trace;
};

/// Weighted diagonality objective sum_s w_s ||diag(U C_s U^T)||^2.
double diagonality(std::span<const Matrix> matrices, std::span<const double> weights, const Matrix& u);

/// Jacobi-rotation joint diagonalizer. Finds orthogonal U that locally
/// maximizes the weighted diagonality of {U C_s U^T}. Rotations are taken in
/// cyclic pair order with the closed-form optimal angle for each pair. Stops
/// once the largest angle of a sweep drops below `tol`; hitting `max_sweeps`
/// leaves `converged == false` rather than throwing.
JointDiagResult joint_diagonalize(std::span<const Matrix> matrices, std::span<const double> weights,
                                  const JointDiagOptions& options = {},
                                  const std::optional<Matrix>& start = std::nullopt);

/// Haar-distributed random orthogonal matrix from a Gaussian draw.
template <typename Rng>
Matrix random_orthogonal(int p, Rng& rng);

bool is_orthogonal(const Matrix& u, double tol = 1e-10);

}  // namespace cumica

#include "cumica/detail/random_orthogonal.hpp"
