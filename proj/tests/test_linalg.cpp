#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <vector>

#include "cumica/distributions.hpp"
#include "cumica/errors.hpp"
#include "cumica/linalg.hpp"
#include "cumica/simulation.hpp"
#include "support.hpp"

using namespace cumica;

namespace {

Matrix random_spd(int p, std::uint64_t seed) {
  const Matrix a = cumica::testing::gaussian_matrix(p, p, seed);
  return a * a.transpose() + 0.1 * Matrix::Identity(p, p);
}

}  // namespace

TEST_CASE("symmetric eigensolver agrees with a reference solver") {
  for (int p : {2, 3, 5, 8}) {
    const Matrix s = random_spd(p, 100 + p) - 2.0 * Matrix::Identity(p, p);
    const SymmetricEigen e = symmetric_eigen(s);
    Eigen::SelfAdjointEigenSolver<Matrix> ref(s);
    Vector ref_values = ref.eigenvalues().reverse();
    CHECK((e.values - ref_values).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((s * e.vectors - e.vectors * e.values.asDiagonal()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(is_orthogonal(e.vectors, 1e-12));
    for (int j = 0; j + 1 < p; ++j) CHECK(e.values[j] >= e.values[j + 1]);
    for (int j = 0; j < p; ++j) {
      Eigen::Index imax = 0;
      e.vectors.col(j).cwiseAbs().maxCoeff(&imax);
      CHECK(e.vectors(imax, j) > 0.0);
    }
  }
}

TEST_CASE("inverse square root") {
  const Matrix s = random_spd(4, 7);
  const Matrix g = inv_sqrt_sym(s);
  CHECK((g * s * g - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((g - g.transpose()).cwiseAbs().maxCoeff() == 0.0);
  const Matrix d = Vector::Constant(3, 4.0).asDiagonal();
  CHECK((inv_sqrt_sym(d) - 0.5 * Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-15);

  Matrix singular = Matrix::Zero(3, 3);
  singular(0, 0) = 1.0;
  singular(1, 1) = 1.0;
  CHECK_THROWS_AS(inv_sqrt_sym(singular), Error);
  Matrix asym = s;
  asym(0, 1) += 1e-3;
  try {
    inv_sqrt_sym(asym);
    FAIL("expected NotSymmetric");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSymmetric);
  }
}

TEST_CASE("polar orthogonal factor") {
  const Matrix t = cumica::testing::gaussian_matrix(4, 4, 11);
  const Matrix u = polar_orthogonal(t);
  CHECK(is_orthogonal(u, 1e-12));
  // U^T T is symmetric positive definite.
  const Matrix h = u.transpose() * t;
  CHECK((h - h.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(0.5 * (h + h.transpose())).eigenvalues().minCoeff() > 0.0);
  RngStream rng(3);
  const Matrix q = random_orthogonal(5, rng);
  CHECK((polar_orthogonal(q) - q).cwiseAbs().maxCoeff() < 1e-12);

  Matrix r = t;
  r.row(3) = r.row(2);
  try {
    polar_orthogonal(r);
    FAIL("expected RankDeficient");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RankDeficient);
  }
}

TEST_CASE("random orthogonal matrices") {
  RngStream rng(42);
  for (int p = 2; p <= 7; ++p) CHECK(is_orthogonal(random_orthogonal(p, rng), 1e-12));
  RngStream a(9), b(9);
  CHECK(random_orthogonal(4, a) == random_orthogonal(4, b));
}

TEST_CASE("joint diagonalization of planted sets") {
  for (int p = 2; p <= 6; ++p) {
    for (int count : {1, 5, 40}) {
      RngStream rng(1000 + 10 * p + count);
      const Matrix u0 = random_orthogonal(p, rng);
      std::normal_distribution<double> normal;
      std::vector<Matrix> mats;
      std::vector<double> weights;
      for (int s = 0; s < count; ++s) {
        Vector d(p);
        for (auto& v : d) v = normal(rng);
        mats.push_back(u0.transpose() * d.asDiagonal() * u0);
        weights.push_back(0.5 + s % 3);
      }
      const JointDiagResult r = joint_diagonalize(mats, weights);
      CAPTURE(p);
      CAPTURE(count);
      CHECK(r.converged);
      CHECK(is_orthogonal(r.u, 1e-12));
      CHECK(mdi(r.u, u0.transpose()) < 1e-8);
      for (std::size_t i = 0; i < r.mass_trace.size(); ++i)
        CHECK(std::abs(r.mass_trace[i] - r.mass_trace[0]) <= 1e-10 * r.mass_trace[0]);
      for (std::size_t i = 1; i < r.objective_trace.size(); ++i)
        CHECK(r.objective_trace[i] >= r.objective_trace[i - 1] - 1e-12 * r.mass_trace[0]);
      CHECK(r.objective == doctest::Approx(r.mass_trace.back()).epsilon(1e-10));
    }
  }
}

TEST_CASE("population cumulant matrices of two gamma sources are jointly diagonalized") {
  const MomentProfile a = moment_profile(SourceSpec::gamma(1.0));
  const MomentProfile b = moment_profile(SourceSpec::gamma(4.0));
  RngStream rng(5);
  const Matrix u0 = random_orthogonal(2, rng);
  std::vector<Matrix> mats;
  std::vector<double> weights;
  const double g[2] = {a.gamma, b.gamma}, k[2] = {a.kappa, b.kappa};
  for (int i = 0; i < 2; ++i) {
    Matrix c3 = Matrix::Zero(2, 2);
    c3(i, i) = g[i];
    mats.push_back(u0.transpose() * c3 * u0);
    weights.push_back(0.3);
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Matrix c4 = Matrix::Zero(2, 2);
      if (i == j) c4(i, i) = k[i];
      mats.push_back(u0.transpose() * c4 * u0);
      weights.push_back(0.7);
    }
  const JointDiagResult r = joint_diagonalize(mats, weights);
  CHECK(mdi(r.u, u0.transpose()) < 1e-8);
  CHECK(cumica::testing::signed_permutation_distance(r.u, u0) < 1e-8);
}

TEST_CASE("joint diagonalization input checks") {
  const std::vector<Matrix> mats{Matrix::Identity(2, 2), Matrix::Identity(3, 3)};
  const std::vector<double> w{1.0, 1.0};
  CHECK_THROWS_AS(joint_diagonalize(mats, w), Error);
  const std::vector<Matrix> one{Matrix::Identity(2, 2)};
  CHECK_THROWS_AS(joint_diagonalize(one, std::vector<double>{-1.0}), Error);
  CHECK_THROWS_AS(joint_diagonalize(one, std::vector<double>{0.0}), Error);
  CHECK_THROWS_AS(joint_diagonalize(one, std::vector<double>{1.0, 2.0}), Error);
  const JointDiagResult r = joint_diagonalize(one, std::vector<double>{1.0});
  CHECK(r.converged);
  CHECK(r.u == Matrix::Identity(2, 2));
}

TEST_CASE("diagonality objective") {
  const std::vector<Matrix> mats{Matrix::Identity(3, 3) * 2.0};
  const std::vector<double> w{0.5};
  RngStream rng(1);
  CHECK(diagonality(mats, w, random_orthogonal(3, rng)) == doctest::Approx(6.0));
}
