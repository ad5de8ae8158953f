#include "cumica/cumulants.hpp"

#include <cmath>

#include "cumica/errors.hpp"

namespace cumica {

namespace {

void check_index(const StandardizedSample& s, Eigen::Index i) {
  if (i < 0 || i >= s.p())
    throw Error(ErrorKind::IndexOutOfRange, "cumulant matrix index out of range", static_cast<int>(i));
}

// mean over rows of weight[r] * x_r x_r^T
Matrix weighted_scatter(const Matrix& x, const Vector& weight) {
  const Matrix wx = x.array().colwise() * weight.array();
  return (wx.transpose() * x) / static_cast<double>(x.rows());
}

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

void validate_data(const Matrix& x) {
  if (x.cols() < 2) throw Error(ErrorKind::InvalidArgument, "data needs at least two variables");
  if (x.rows() <= x.cols()) throw Error(ErrorKind::NotPositiveDefinite, "data needs more rows than columns");
  if (!x.allFinite()) throw Error(ErrorKind::InvalidArgument, "data contains non-finite entries");
}

Matrix sample_covariance(const Matrix& x) {
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const Matrix xc = x.rowwise() - mean;
  return symmetrized(xc.transpose() * xc) / static_cast<double>(x.rows());
}

StandardizedSample standardize(const Matrix& x) {
  validate_data(x);
  StandardizedSample s;
  s.mean = x.colwise().mean().transpose();
  const Matrix xc = x.rowwise() - s.mean.transpose();
  const Matrix cov = symmetrized(xc.transpose() * xc) / static_cast<double>(x.rows());
  s.whitener = inv_sqrt_sym(cov);
  s.xst = xc * s.whitener.transpose();
  return s;
}

StandardizedSample standardize(const Matrix& x, const Matrix& w0) {
  validate_data(x);
  if (w0.rows() != x.cols() || w0.cols() != x.cols())
    throw Error(ErrorKind::DimensionMismatch, "custom whitener must be p x p");
  Eigen::JacobiSVD<Matrix> svd(w0);
  const Vector& sv = svd.singularValues();
  if (!(sv[0] > 0.0) || sv[sv.size() - 1] <= 1e-12 * sv[0])
    throw Error(ErrorKind::SingularCustomWhitener, "custom whitener is singular");

  StandardizedSample s;
  s.mean = x.colwise().mean().transpose();
  const Matrix xc = x.rowwise() - s.mean.transpose();
  const Matrix cov = symmetrized(xc.transpose() * xc) / static_cast<double>(x.rows());
  const Vector var = (w0 * cov * w0.transpose()).diagonal();
  if ((var.array() <= 0.0).any())
    throw Error(ErrorKind::SingularCustomWhitener, "custom whitener yields a zero-variance row");
  s.whitener = var.cwiseSqrt().cwiseInverse().asDiagonal() * w0;
  s.xst = xc * s.whitener.transpose();
  const Matrix white = s.whitener * cov * s.whitener.transpose();
  if ((white - Matrix::Identity(x.cols(), x.cols())).cwiseAbs().maxCoeff() > 1e-6)
    throw Error(ErrorKind::SingularCustomWhitener, "custom whitener does not decorrelate the data");
  return s;
}

ProjectionCumulants projection_cumulants(const StandardizedSample& s, const Vector& u) {
  if (u.size() != s.p()) throw Error(ErrorKind::DimensionMismatch, "direction has wrong length");
  if (std::abs(u.norm() - 1.0) > 1e-10) throw Error(ErrorKind::NotUnit, "direction must have unit norm");
  const Vector y = s.xst * u;
  const Vector y2 = y.cwiseProduct(y);
  ProjectionCumulants out;
  out.gamma = y2.cwiseProduct(y).mean();
  out.kappa = y2.cwiseProduct(y2).mean() - 3.0;
  return out;
}

Matrix cum3_matrix(const StandardizedSample& s, Eigen::Index i) {
  check_index(s, i);
  return symmetrized(weighted_scatter(s.xst, s.xst.col(i)));
}

Matrix cum4_matrix(const StandardizedSample& s, Eigen::Index i, Eigen::Index j) {
  check_index(s, i);
  check_index(s, j);
  const double n = static_cast<double>(s.n());
  const Matrix scatter = (s.xst.transpose() * s.xst) / n;
  const Vector xij = s.xst.col(i).cwiseProduct(s.xst.col(j));
  Matrix m = weighted_scatter(s.xst, xij);
  m -= scatter(i, j) * scatter;
  m -= scatter.col(i) * scatter.col(j).transpose();
  m -= scatter.col(j) * scatter.col(i).transpose();
  return symmetrized(m);
}

CompoundMatrices compound_matrices(const StandardizedSample& s) {
  const Eigen::Index p = s.p();
  CompoundMatrices out{Matrix::Zero(p, p), Matrix::Zero(p, p)};
  for (Eigen::Index i = 0; i < p; ++i) out.c3 += cum3_matrix(s, i);
  for (Eigen::Index i = 0; i < p; ++i) out.c4 += cum4_matrix(s, i, i);
  return out;
}

std::vector<Matrix> all_cum3_matrices(const StandardizedSample& s) {
  std::vector<Matrix> out;
  out.reserve(s.p());
  for (Eigen::Index i = 0; i < s.p(); ++i) out.push_back(cum3_matrix(s, i));
  return out;
}

std::vector<Matrix> all_cum4_matrices(const StandardizedSample& s) {
  const Eigen::Index p = s.p();
  const double n = static_cast<double>(s.n());
  const Matrix scatter = (s.xst.transpose() * s.xst) / n;
  std::vector<Matrix> out(p * p);
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = i; j < p; ++j) {
      const Vector xij = s.xst.col(i).cwiseProduct(s.xst.col(j));
      Matrix m = weighted_scatter(s.xst, xij);
      m -= scatter(i, j) * scatter;
      m -= scatter.col(i) * scatter.col(j).transpose();
      m -= scatter.col(j) * scatter.col(i).transpose();
      out[i * p + j] = symmetrized(m);
      if (j != i) out[j * p + i] = out[i * p + j];
    }
  }
  return out;
}

}  // namespace cumica
