#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cumica/asymptotics.hpp"
#include "cumica/distributions.hpp"
#include "cumica/estimators.hpp"
#include "cumica/random.hpp"

namespace cumica {

struct IcModelSpec {
  enum class Mixing { Identity, Given, RandomFullRank };

  std::vector<SourceSpec> sources;
  Mixing mixing = Mixing::Identity;
  Matrix omega;              // used when mixing == Given
  std::uint64_t mixing_seed = 0;  // used when mixing == RandomFullRank
  Vector shift;              // empty means zero

  Eigen::Index p() const { return static_cast<Eigen::Index>(sources.size()); }
};

struct IcSample {
  Matrix x;
  Matrix omega;
  Matrix z;
};

/// Mixing matrix of the model. RandomFullRank draws standard normal entries
/// from the mixing seed, redrawing until the condition number is below 1e8.
Matrix mixing_matrix(const IcModelSpec& spec);

/// x_i = shift + Omega z_i with independent standardized source columns,
/// each column drawn in order from `rng`.
IcSample generate_ic_sample(const IcModelSpec& spec, std::size_t n, RngStream& rng);

/// Minimum distance index of W Omega from the signed scaled permutations,
/// in [0, 1].
double mdi(const Matrix& w, const Matrix& omega);

/// Signed permutation P J minimizing ||P J W - I||_F, applied to W.
Matrix align_to_identity(const Matrix& w);

struct AssumptionReport {
  int required = 0;   // assumption the method and alpha rely on
  bool holds = true;
  int component = -1; // zero-based offending component, or -1
  std::string message;
};

/// Skewness/kurtosis assumption a method needs at weight alpha:
/// 3, 4 or 7 for the projection pursuit and all-cumulant methods,
/// 5, 6 or 8 for the compound method.
int required_assumption(Method method, double alpha);

AssumptionReport check_assumptions(std::span<const MomentProfile> profiles, Method method, double alpha);

/// Same check, throwing AssumptionViolated carrying the offending component.
void require_assumptions(std::span<const MomentProfile> profiles, Method method, double alpha);

/// Population ASV table for the sources in the given order. Deflation rows
/// are extracted in descending population index order, so the table is built
/// in that order and mapped back.
AsvTable population_asv(Method method, std::span<const MomentProfile> profiles, double alpha);

struct McResult {
  Method method = Method::SymmetricPP;
  double alpha = 0.0;
  std::size_t n = 0;
  int replications = 0;
  int failed = 0;
  Matrix n_var;     // n times the unbiased variance of each aligned entry
  Matrix asv;       // analytic targets, diag included
  double mdi_mean = 0.0;
  double mdi_median = 0.0;
  double wall_seconds = 0.0;
};

struct McOptions {
  SolverOptions solver;
  int threads = 0;  // 0 means resolve_threads()
};

/// Replications are run with identity mixing; replication r draws its data
/// from split_seed(master_seed, r) and uses that seed for solver restarts.
McResult monte_carlo_experiment(const IcModelSpec& model, Method method, double alpha, std::size_t n,
                                int replications, std::uint64_t master_seed, const McOptions& options = {});

/// Worker count: explicit value, else CUMICA_THREADS, else hardware concurrency.
int resolve_threads(std::optional<int> requested = std::nullopt);

/// One-parameter source family swept over [lo, hi]. The mixture family
/// sweeps pi at fixed mu.
struct FamilyRange {
  Family family = Family::Gamma;
  double lo = 0.0;
  double hi = 0.0;
  double mu = 0.0;

  SourceSpec at(double value) const;
};

/// Values are ASV(w_12) + ASV(w_21) for two sources, `values(i, j)` at
/// x = xs[i], y = ys[j]. Cells whose formula has a vanishing denominator are
/// +inf; cells with invalid parameters are NaN.
struct ContourGrid {
  Method method = Method::SymmetricPP;
  double alpha = 0.0;
  std::vector<double> xs;
  std::vector<double> ys;
  Matrix values;
};

ContourGrid contour_grid(const FamilyRange& x, const FamilyRange& y, Method method, double alpha, int steps);

/// Sample versions of (q_kl, q_lk, r_kl, r_lk, q_m'kl, r_mkl, s_kl) from raw
/// standardized sources z, for population skewnesses gamma_k and gamma_l.
Vector table_statistics(const Matrix& z, Eigen::Index k, Eigen::Index l, Eigen::Index m_prime, Eigen::Index m,
                        double gamma_k, double gamma_l);

}  // namespace cumica
