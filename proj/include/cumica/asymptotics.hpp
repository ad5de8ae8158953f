#pragma once

#include <span>
#include <utility>

#include "cumica/distributions.hpp"
#include "cumica/estimators.hpp"

namespace cumica {

/// Limiting variances of sqrt(n) (w_kl - delta_kl) at the true sources.
/// diag[k] = (kappa_k + 2) / 4 for every method; offdiag is p x p with an
/// unused zero diagonal.
struct AsvTable {
  Method method = Method::SymmetricPP;
  double alpha = 0.0;
  Vector diag;
  Matrix offdiag;
};

struct ZetaTriple {
  double zeta11 = 0.0;
  double zeta22 = 0.0;
  double zeta12 = 0.0;
};

/// Components in extraction order. Row k is extracted before row l when k < l.
AsvTable asv_deflation(std::span<const MomentProfile> profiles, double alpha);

AsvTable asv_symmetric(std::span<const MomentProfile> profiles, double alpha);

/// The dimension is the number of profiles; sums over the remaining
/// components run over the profiles other than k and l.
AsvTable asv_compound(std::span<const MomentProfile> profiles, double alpha);

AsvTable asv_allcumulant(std::span<const MomentProfile> profiles, double alpha);

AsvTable asv_table(Method method, std::span<const MomentProfile> profiles, double alpha);

/// Pairwise zeta terms shared by the symmetric and all-cumulant formulas.
ZetaTriple pair_zeta(const MomentProfile& k, const MomentProfile& l);

/// Symmetric-PP weight with the same asymptotics as all-cumulant weight alpha_j.
double jade_weight_map(double alpha_j);

/// ASV(w_kl) + ASV(w_lk).
double offdiag_criterion(const AsvTable& table, Eigen::Index k, Eigen::Index l);

/// Deflation ASV of the first extracted row for the standardized mixture
/// pi N(0,1) + (1 - pi) N(mu,1). Returns +inf at a pole.
double cluster_objective(double alpha, double pi, double mu);

struct OptimalAlpha {
  double alpha_star = 0.0;
  double f_star = 0.0;
};

/// Global minimizer of cluster_objective over [0, 1]: grid search with step
/// `grid_tol`, then golden section in the bracket around the best grid point.
OptimalAlpha optimal_alpha(double pi, double mu, double grid_tol = 1e-3);

/// Limiting covariance of sqrt(n) times the statistics
/// (q_kl, q_lk, r_kl, r_lk, q_m'kl, r_mkl, s_kl) where
/// q_kl = mean((z_k^3 - gamma_k) z_l), r_kl = mean((z_k^2 - 1) z_l),
/// q_m'kl = mean(z_m'^2 z_k z_l),
/// r_mkl = mean(z_m z_k z_l) and s_kl = mean(z_k z_l).
Matrix stat_covariance_table(const MomentProfile& k, const MomentProfile& l, const MomentProfile& m);

}  // namespace cumica
