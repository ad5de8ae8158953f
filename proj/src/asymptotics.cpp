#include "cumica/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cumica/errors.hpp"

namespace cumica {

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must lie in [0, 1]");
}

AsvTable empty_table(Method method, std::span<const MomentProfile> profiles, double alpha) {
  check_alpha(alpha);
  if (profiles.size() < 2) throw Error(ErrorKind::InvalidArgument, "at least two components are needed");
  const auto p = static_cast<Eigen::Index>(profiles.size());
  AsvTable t;
  t.method = method;
  t.alpha = alpha;
  t.diag.resize(p);
  for (Eigen::Index k = 0; k < p; ++k) t.diag[k] = (profiles[k].kappa + 2.0) / 4.0;
  t.offdiag = Matrix::Zero(p, p);
  return t;
}

double sq(double v) { return v * v; }

ZetaTriple single_zeta(const MomentProfile& c) {
  return {sq(c.gamma) * (c.nu - sq(c.gamma)), sq(c.kappa) * (c.omega - sq(c.beta)),
          c.gamma * c.kappa * (c.eta - c.gamma * c.beta)};
}

double deflation_component(const MomentProfile& c, double alpha, int index) {
  const ZetaTriple z = single_zeta(c);
  const double a = alpha, b = 1.0 - alpha;
  const double den = 3.0 * a * sq(c.gamma) + 4.0 * b * sq(c.kappa);
  if (!(den > 0.0)) throw Error(ErrorKind::ZeroDenominator, "deflation denominator vanishes", index);
  return (9.0 * a * a * z.zeta11 + 16.0 * b * b * z.zeta22 + 24.0 * a * b * z.zeta12) / sq(den);
}

}  // namespace

ZetaTriple pair_zeta(const MomentProfile& k, const MomentProfile& l) {
  const ZetaTriple zk = single_zeta(k), zl = single_zeta(l);
  return {zk.zeta11 + zl.zeta11 + sq(sq(l.gamma)), zk.zeta22 + zl.zeta22 + sq(sq(l.kappa)),
          zk.zeta12 + zl.zeta12 + sq(l.gamma) * sq(l.kappa)};
}

AsvTable asv_deflation(std::span<const MomentProfile> profiles, double alpha) {
  AsvTable t = empty_table(Method::DeflationPP, profiles, alpha);
  const Eigen::Index p = t.diag.size();
  for (Eigen::Index k = 0; k + 1 < p; ++k) {
    const double f = deflation_component(profiles[k], alpha, static_cast<int>(k));
    for (Eigen::Index l = k + 1; l < p; ++l) {
      t.offdiag(k, l) = f;
      t.offdiag(l, k) = f + 1.0;
    }
  }
  return t;
}

AsvTable asv_symmetric(std::span<const MomentProfile> profiles, double alpha) {
  AsvTable t = empty_table(Method::SymmetricPP, profiles, alpha);
  const Eigen::Index p = t.diag.size();
  const double a = alpha, b = 1.0 - alpha;
  for (Eigen::Index k = 0; k < p; ++k) {
    for (Eigen::Index l = 0; l < p; ++l) {
      if (k == l) continue;
      const MomentProfile &ck = profiles[k], &cl = profiles[l];
      const ZetaTriple z = pair_zeta(ck, cl);
      const double den = 3.0 * a * (sq(ck.gamma) + sq(cl.gamma)) + 4.0 * b * (sq(ck.kappa) + sq(cl.kappa));
      if (!(den > 0.0))
        throw Error(ErrorKind::ZeroDenominator, "symmetric denominator vanishes for pair with component " +
                                                    std::to_string(l + 1), static_cast<int>(k));
      t.offdiag(k, l) = (9.0 * a * a * z.zeta11 + 16.0 * b * b * z.zeta22 + 24.0 * a * b * z.zeta12) / sq(den);
    }
  }
  return t;
}

AsvTable asv_allcumulant(std::span<const MomentProfile> profiles, double alpha) {
  AsvTable t = empty_table(Method::AllCumulant, profiles, alpha);
  const Eigen::Index p = t.diag.size();
  const double a = alpha, b = 1.0 - alpha;
  for (Eigen::Index k = 0; k < p; ++k) {
    for (Eigen::Index l = 0; l < p; ++l) {
      if (k == l) continue;
      const MomentProfile &ck = profiles[k], &cl = profiles[l];
      const ZetaTriple z = pair_zeta(ck, cl);
      const double den = a * (sq(ck.gamma) + sq(cl.gamma)) + b * (sq(ck.kappa) + sq(cl.kappa));
      if (!(den > 0.0))
        throw Error(ErrorKind::ZeroDenominator, "all-cumulant denominator vanishes for pair with component " +
                                                    std::to_string(l + 1), static_cast<int>(k));
      t.offdiag(k, l) = (a * a * z.zeta11 + b * b * z.zeta22 + 2.0 * a * b * z.zeta12) / sq(den);
    }
  }
  return t;
}

AsvTable asv_compound(std::span<const MomentProfile> profiles, double alpha) {
  AsvTable t = empty_table(Method::CompoundCumulant, profiles, alpha);
  const Eigen::Index p = t.diag.size();
  const double a = alpha, b = 1.0 - alpha;
  double sum_beta_excess = 0.0, sum_gamma = 0.0;
  for (const auto& c : profiles) {
    sum_beta_excess += c.beta - 1.0;
    sum_gamma += c.gamma;
  }
  for (Eigen::Index k = 0; k < p; ++k) {
    for (Eigen::Index l = 0; l < p; ++l) {
      if (k == l) continue;
      const MomentProfile &ck = profiles[k], &cl = profiles[l];
      const double rest_beta = sum_beta_excess - (ck.beta - 1.0) - (cl.beta - 1.0);
      const double rest_gamma = sum_gamma - ck.gamma - cl.gamma;
      const double z11 = (ck.nu - sq(ck.gamma)) + (cl.nu - sq(cl.gamma)) + sq(cl.gamma) + static_cast<double>(p - 2);
      const double z22 = (ck.omega - sq(ck.beta)) + (cl.omega - sq(cl.beta)) + sq(cl.kappa) + rest_beta;
      const double z12 = (ck.eta - ck.gamma * ck.beta) + (cl.eta - cl.gamma * cl.beta) + cl.gamma * cl.kappa + rest_gamma;
      const double d1 = ck.gamma - cl.gamma, d2 = ck.kappa - cl.kappa;
      const double den = a * sq(d1) + b * sq(d2);
      if (!(den > 0.0))
        throw Error(ErrorKind::ZeroDenominator, "compound denominator vanishes for pair with component " +
                                                    std::to_string(l + 1), static_cast<int>(k));
      t.offdiag(k, l) =
          (a * a * sq(d1) * z11 + b * b * sq(d2) * z22 + 2.0 * a * b * d1 * d2 * z12) / sq(den);
    }
  }
  return t;
}

AsvTable asv_table(Method method, std::span<const MomentProfile> profiles, double alpha) {
  switch (method) {
    case Method::DeflationPP: return asv_deflation(profiles, alpha);
    case Method::SymmetricPP: return asv_symmetric(profiles, alpha);
    case Method::CompoundCumulant: return asv_compound(profiles, alpha);
    case Method::AllCumulant: return asv_allcumulant(profiles, alpha);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown method");
}

double jade_weight_map(double alpha_j) {
  check_alpha(alpha_j);
  return 4.0 * alpha_j / (3.0 + alpha_j);
}

double offdiag_criterion(const AsvTable& table, Eigen::Index k, Eigen::Index l) {
  const Eigen::Index p = table.offdiag.rows();
  if (k < 0 || k >= p) throw Error(ErrorKind::IndexOutOfRange, "row index out of range", static_cast<int>(k));
  if (l < 0 || l >= p) throw Error(ErrorKind::IndexOutOfRange, "column index out of range", static_cast<int>(l));
  if (k == l) throw Error(ErrorKind::IndexOutOfRange, "criterion needs two distinct components", static_cast<int>(k));
  return table.offdiag(k, l) + table.offdiag(l, k);
}

double cluster_objective(double alpha, double pi, double mu) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorKind::InvalidParams, "alpha must lie in [0, 1]");
  if (!(pi > 0.0 && pi < 1.0)) throw Error(ErrorKind::InvalidParams, "pi must lie in (0, 1)");
  if (mu == 0.0 || !std::isfinite(mu)) throw Error(ErrorKind::InvalidParams, "mu must be finite and nonzero");
  MomentProfile c = moment_profile(SourceSpec::mixture(pi, mu));
  // Roundoff leaves tiny nonzero cumulants exactly at the poles.
  if (std::abs(c.gamma) < 1e-12) c.gamma = 0.0;
  if (std::abs(c.kappa) < 1e-12) c.kappa = 0.0;
  const double den = 3.0 * alpha * sq(c.gamma) + 4.0 * (1.0 - alpha) * sq(c.kappa);
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return deflation_component(c, alpha, 0);
}

OptimalAlpha optimal_alpha(double pi, double mu, double grid_tol) {
  if (!(grid_tol > 0.0 && grid_tol <= 1.0)) throw Error(ErrorKind::InvalidParams, "grid step must lie in (0, 1]");
  const int steps = static_cast<int>(std::ceil(1.0 / grid_tol - 1e-9));
  auto at = [&](int i) { return i >= steps ? 1.0 : i * grid_tol; };
  int best = 0;
  double best_f = cluster_objective(0.0, pi, mu);
  for (int i = 1; i <= steps; ++i) {
    const double f = cluster_objective(at(i), pi, mu);
    if (f < best_f && !(std::isfinite(best_f) && best_f - f <= 1e-12 * std::abs(best_f))) {
      best = i;
      best_f = f;
    }
  }
  OptimalAlpha out{at(best), best_f};
  if (!std::isfinite(best_f)) return out;

  double lo = at(std::max(best - 1, 0)), hi = at(std::min(best + 1, steps));
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - invphi * (hi - lo), d = lo + invphi * (hi - lo);
  double fc = cluster_objective(c, pi, mu), fd = cluster_objective(d, pi, mu);
  while (hi - lo > 1e-8) {
    if (fc < fd) {
      hi = d; d = c; fd = fc;
      c = hi - invphi * (hi - lo); fc = cluster_objective(c, pi, mu);
    } else {
      lo = c; c = d; fc = fd;
      d = lo + invphi * (hi - lo); fd = cluster_objective(d, pi, mu);
    }
  }
  const double refined = 0.5 * (lo + hi);
  const double f_refined = cluster_objective(refined, pi, mu);
  if (out.f_star - f_refined > 1e-12 * std::abs(out.f_star)) out = {refined, f_refined};
  return out;
}

Matrix stat_covariance_table(const MomentProfile& k, const MomentProfile& l, const MomentProfile& m) {
  Matrix c = Matrix::Zero(7, 7);
  enum { Qkl, Qlk, Rkl, Rlk, Qm, Rm, S };
  c(Qkl, Qkl) = k.omega;
  c(Qkl, Qlk) = k.beta * l.beta;
  c(Qkl, Rkl) = k.eta;
  c(Qkl, Rlk) = k.beta * l.gamma;
  c(Qkl, Qm) = k.beta;
  c(Qkl, S) = k.beta;
  c(Qlk, Qlk) = l.omega;
  c(Qlk, Rkl) = l.beta * k.gamma;
  c(Qlk, Rlk) = l.eta;
  c(Qlk, Qm) = l.beta;
  c(Qlk, S) = l.beta;
  c(Rkl, Rkl) = k.nu;
  c(Rkl, Rlk) = k.gamma * l.gamma;
  c(Rkl, Qm) = k.gamma;
  c(Rkl, S) = k.gamma;
  c(Rlk, Rlk) = l.nu;
  c(Rlk, Qm) = l.gamma;
  c(Rlk, S) = l.gamma;
  c(Qm, Qm) = m.beta;
  c(Qm, S) = 1.0;
  c(Rm, Rm) = 1.0;
  c(S, S) = 1.0;
  return c.selfadjointView<Eigen::Upper>();
}

}  // namespace cumica
