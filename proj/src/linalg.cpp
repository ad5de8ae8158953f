#include "cumica/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cumica/errors.hpp"

namespace cumica {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " must be a non-empty square matrix");
}

void require_symmetric(const Matrix& s) {
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw Error(ErrorKind::NotSymmetric, "matrix is not symmetric to 1e-12 relative tolerance");
}

// Applies the rotation R (R_kk = c, R_kl = s, R_lk = -s, R_ll = c) as R A R^T.
void rotate_congruence(Matrix& a, int k, int l, double c, double s) {
  const Eigen::RowVectorXd rk = a.row(k), rl = a.row(l);
  a.row(k) = c * rk + s * rl;
  a.row(l) = -s * rk + c * rl;
  const Vector ck = a.col(k), cl = a.col(l);
  a.col(k) = c * ck + s * cl;
  a.col(l) = -s * ck + c * cl;
}

}  // namespace

SymmetricEigen symmetric_eigen(const Matrix& s, int max_sweeps) {
  require_square(s, "eigen input");
  require_symmetric(s);
  const int p = static_cast<int>(s.rows());
  Matrix a = 0.5 * (s + s.transpose());
  Matrix v = Matrix::Identity(p, p);
  constexpr double eps = std::numeric_limits<double>::epsilon();

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (int i = 0; i < p - 1; ++i) {
      for (int j = i + 1; j < p; ++j) {
        const double aij = a(i, j);
        if (std::abs(aij) <= std::numeric_limits<double>::min()) continue;
        if (std::abs(aij) <= eps * std::sqrt(std::abs(a(i, i)) * std::abs(a(j, j)))) continue;
        rotated = true;
        const double theta = (a(j, j) - a(i, i)) / (2.0 * aij);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int k = 0; k < p; ++k) {
          const double akp = a(k, i), akq = a(k, j);
          a(k, i) = c * akp - sn * akq;
          a(k, j) = sn * akp + c * akq;
        }
        for (int k = 0; k < p; ++k) {
          const double apk = a(i, k), aqk = a(j, k);
          a(i, k) = c * apk - sn * aqk;
          a(j, k) = sn * apk + c * aqk;
        }
        a(i, j) = a(j, i) = 0.0;
        for (int k = 0; k < p; ++k) {
          const double vkp = v(k, i), vkq = v(k, j);
          v(k, i) = c * vkp - sn * vkq;
          v(k, j) = sn * vkp + c * vkq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<int> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) > a(y, y); });

  SymmetricEigen out;
  out.values.resize(p);
  out.vectors.resize(p, p);
  out.sweeps = sweep;
  for (int j = 0; j < p; ++j) {
    out.values[j] = a(order[j], order[j]);
    Vector col = v.col(order[j]);
    Eigen::Index imax = 0;
    col.cwiseAbs().maxCoeff(&imax);
    if (col[imax] < 0.0) col = -col;
    out.vectors.col(j) = col;
  }
  return out;
}

Matrix inv_sqrt_sym(const Matrix& s) {
  const SymmetricEigen eig = symmetric_eigen(s);
  const double largest = eig.values[0];
  if (!(largest > 0.0) || eig.values.minCoeff() <= 1e-12 * largest)
    throw Error(ErrorKind::NotPositiveDefinite, "eigenvalue below 1e-12 x largest");
  const Vector scale = eig.values.cwiseSqrt().cwiseInverse();
  Matrix g = eig.vectors * scale.asDiagonal() * eig.vectors.transpose();
  return 0.5 * (g + g.transpose());
}

Matrix polar_orthogonal(const Matrix& t) {
  require_square(t, "polar input");
  Eigen::JacobiSVD<Matrix> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  if (!(sv[0] > 0.0) || sv[sv.size() - 1] <= 1e-12 * sv[0])
    throw Error(ErrorKind::RankDeficient, "smallest singular value below 1e-12 x largest");
  return svd.matrixU() * svd.matrixV().transpose();
}

double diagonality(std::span<const Matrix> matrices, std::span<const double> weights, const Matrix& u) {
  double total = 0.0;
  for (std::size_t s = 0; s < matrices.size(); ++s) {
    if (weights[s] == 0.0) continue;
    const Matrix r = u * matrices[s] * u.transpose();
    total += weights[s] * r.diagonal().squaredNorm();
  }
  return total;
}

JointDiagResult joint_diagonalize(std::span<const Matrix> matrices, std::span<const double> weights,
                                  const JointDiagOptions& options, const std::optional<Matrix>& start) {
  if (matrices.empty()) throw Error(ErrorKind::InvalidArgument, "joint_diagonalize needs at least one matrix");
  if (weights.size() != matrices.size())
    throw Error(ErrorKind::DimensionMismatch, "one weight per matrix required");
  const Eigen::Index p = matrices[0].rows();
  bool any_positive = false;
  for (std::size_t s = 0; s < matrices.size(); ++s) {
    if (matrices[s].rows() != p || matrices[s].cols() != p)
      throw Error(ErrorKind::DimensionMismatch, "all matrices must share one dimension", static_cast<int>(s));
    if (!(weights[s] >= 0.0) || !std::isfinite(weights[s]))
      throw Error(ErrorKind::InvalidArgument, "weights must be finite and nonnegative", static_cast<int>(s));
    any_positive = any_positive || weights[s] > 0.0;
  }
  if (!any_positive) throw Error(ErrorKind::InvalidArgument, "at least one weight must be positive");

  JointDiagResult res;
  res.u = start ? *start : Matrix::Identity(p, p);
  if (res.u.rows() != p || res.u.cols() != p)
    throw Error(ErrorKind::DimensionMismatch, "start rotation has wrong dimension");

  std::vector<Matrix> work;
  std::vector<double> w;
  for (std::size_t s = 0; s < matrices.size(); ++s) {
    if (weights[s] == 0.0) continue;
    work.push_back(res.u * matrices[s] * res.u.transpose());
    w.push_back(weights[s]);
  }

  auto record = [&] {
    double diag = 0.0, mass = 0.0;
    for (std::size_t s = 0; s < work.size(); ++s) {
      diag += w[s] * work[s].diagonal().squaredNorm();
      mass += w[s] * work[s].squaredNorm();
    }
    res.objective_trace.push_back(diag);
    res.mass_trace.push_back(mass);
    res.objective = diag;
  };
  record();

  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    double max_angle = 0.0;
    for (Eigen::Index k = 0; k < p - 1; ++k) {
      for (Eigen::Index l = k + 1; l < p; ++l) {
        // The pair contributes (v . h_s)^2 with v = (cos 2t, sin 2t); the best
        // v is the principal eigenvector of G = sum_s w_s h_s h_s^T.
        double g00 = 0.0, g01 = 0.0, g11 = 0.0;
        for (std::size_t s = 0; s < work.size(); ++s) {
          const double h0 = work[s](k, k) - work[s](l, l);
          const double h1 = work[s](k, l) + work[s](l, k);
          g00 += w[s] * h0 * h0;
          g01 += w[s] * h0 * h1;
          g11 += w[s] * h1 * h1;
        }
        const double theta = 0.25 * std::atan2(2.0 * g01, g00 - g11);
        if (std::abs(theta) <= std::numeric_limits<double>::min()) continue;
        max_angle = std::max(max_angle, std::abs(theta));
        const double c = std::cos(theta), sn = std::sin(theta);
        for (auto& a : work) rotate_congruence(a, static_cast<int>(k), static_cast<int>(l), c, sn);
        const Eigen::RowVectorXd uk = res.u.row(k), ul = res.u.row(l);
        res.u.row(k) = c * uk + sn * ul;
        res.u.row(l) = -sn * uk + c * ul;
      }
    }
    res.sweeps = sweep + 1;
    record();
    if (max_angle < options.tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

bool is_orthogonal(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.transpose() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace cumica
