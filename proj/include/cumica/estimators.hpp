#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cumica/linalg.hpp"

namespace cumica {

enum class Method { DeflationPP, SymmetricPP, CompoundCumulant, AllCumulant };

std::string_view to_string(Method method) noexcept;

/// Accepts "deflation", "symmetric", "compound", "jade" / "allcumulant".
Method parse_method(std::string_view name);

struct SolverOptions {
  double tol = 1e-9;
  int max_iter = 500;
  int restarts = 10;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class Warning { NoConvergence, DegenerateObjective, NearDegenerateSpectrum };

std::string_view to_string(Warning warning) noexcept;

/// The independent component functional used to pre-standardize data for
/// the compound-cumulant estimator.
struct Standardizer {
  enum class Kind { SymmetricPP, Fobi, Custom };
  Kind kind = Kind::Fobi;
  double alpha = 0.0;
  Matrix w0;

  static Standardizer symmetric_pp(double alpha) { return {Kind::SymmetricPP, alpha, {}}; }
  static Standardizer fobi() { return {Kind::Fobi, 0.0, {}}; }
  static Standardizer custom(Matrix w0) { return {Kind::Custom, 0.0, std::move(w0)}; }
};

/// Estimated unmixing matrix. Rows are ordered by descending
/// alpha * skew^2 + (1 - alpha) * exkurt^2 of the recovered components and
/// signed to have nonnegative skewness when alpha > 0, otherwise so that
/// the largest-magnitude entry of each row is positive.
struct UnmixingEstimate {
  Matrix w;
  Method method = Method::SymmetricPP;
  double alpha = 0.0;
  std::vector<int> iterations;
  bool converged = false;
  double objective = 0.0;
  int restarts_used = 0;
  std::vector<Warning> warnings;
  // Objective value of every accepted iterate of the winning run; one
  // trace per deflation stage, a single trace otherwise.
  std::vector<std::vector<double>> objective_trace;

  bool has_warning(Warning w) const;
};

/// Rows found one at a time by maximizing alpha * skew^2 + (1 - alpha) * exkurt^2
/// under orthogonality to the rows already found.
UnmixingEstimate deflation_pp(const Matrix& x, double alpha, const SolverOptions& options = {});

/// All rows found together by maximizing the summed index over orthogonal U.
UnmixingEstimate symmetric_pp(const Matrix& x, double alpha, const SolverOptions& options = {});

/// Diagonalizes the compound third/fourth cumulant matrices of data
/// pre-standardized by an independent component functional. Defaults to FOBI
/// when alpha == 0 and to symmetric PP with the same alpha otherwise.
UnmixingEstimate compound_cumulant(const Matrix& x, double alpha,
                                   const std::optional<Standardizer>& standardizer = std::nullopt,
                                   const SolverOptions& options = {});

/// Joint diagonalization of all p third-cumulant matrices (weight alpha) and
/// all p^2 fourth-cumulant matrices (weight 1 - alpha). alpha == 0 is JADE.
UnmixingEstimate all_cumulant(const Matrix& x, double alpha, const SolverOptions& options = {});

/// Classical FOBI: eigenvectors of mean(|x_st|^2 x_st x_st^T).
UnmixingEstimate fobi(const Matrix& x);

UnmixingEstimate estimate(Method method, const Matrix& x, double alpha, const SolverOptions& options = {});

/// Sample index alpha * skew^2 + (1 - alpha) * exkurt^2 of one projection.
double projection_index(const Vector& y, double alpha);

}  // namespace cumica
