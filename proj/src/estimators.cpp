#include "cumica/estimators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>

#include "cumica/cumulants.hpp"
#include "cumica/errors.hpp"
#include "cumica/random.hpp"

namespace cumica {

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must lie in [0, 1]");
}

struct Cumulants {
  double gamma;
  double kappa;
};

Cumulants column_cumulants(const Vector& y) {
  const auto y2 = y.array().square();
  return {(y2 * y.array()).mean(), (y2 * y2).mean() - 3.0};
}

double index_of(const Cumulants& c, double alpha) {
  return alpha * c.gamma * c.gamma + (1.0 - alpha) * c.kappa * c.kappa;
}

double sign_blind_distance(const Vector& a, const Vector& b) {
  return std::min((a - b).cwiseAbs().maxCoeff(), (a + b).cwiseAbs().maxCoeff());
}

// Mixed third and fourth moments of a pair of projections, m[a][b] = mean(y1^a y2^b).
struct PlaneMoments {
  std::array<std::array<double, 5>, 5> m{};

  PlaneMoments(const Vector& y1, const Vector& y2) {
    const auto a = y1.array(), b = y2.array();
    const Eigen::ArrayXd a2 = a.square(), b2 = b.square();
    m[3][0] = (a2 * a).mean();
    m[2][1] = (a2 * b).mean();
    m[1][2] = (a * b2).mean();
    m[0][3] = (b2 * b).mean();
    m[4][0] = (a2 * a2).mean();
    m[3][1] = (a2 * a * b).mean();
    m[2][2] = (a2 * b2).mean();
    m[1][3] = (a * b2 * b).mean();
    m[0][4] = (b2 * b2).mean();
  }

  // mean((c y1 + s y2)^a (-s y1 + c y2)^b) for a + b in {3, 4}.
  double rotated(double c, double s, int a, int b) const {
    static constexpr std::array<std::array<double, 5>, 5> binom{
        {{1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}}};
    double total = 0.0;
    for (int i = 0; i <= a; ++i) {
      const double fa = binom[a][i] * std::pow(c, i) * std::pow(s, a - i);
      for (int j = 0; j <= b; ++j) {
        const double fb = binom[b][j] * std::pow(-s, j) * std::pow(c, b - j);
        total += fa * fb * m[i + j][a + b - i - j];
      }
    }
    return total;
  }
};

// Index of the rotated first projection and its derivative in the angle.
std::pair<double, double> first_index(const PlaneMoments& pm, double theta, double alpha) {
  const double c = std::cos(theta), s = std::sin(theta);
  const double g = pm.rotated(c, s, 3, 0), k = pm.rotated(c, s, 4, 0) - 3.0;
  const double dg = 3.0 * pm.rotated(c, s, 2, 1), dk = 4.0 * pm.rotated(c, s, 3, 1);
  return {alpha * g * g + (1.0 - alpha) * k * k, 2.0 * alpha * g * dg + 2.0 * (1.0 - alpha) * k * dk};
}

std::pair<double, double> pair_index(const PlaneMoments& pm, double theta, double alpha) {
  const double c = std::cos(theta), s = std::sin(theta);
  const auto [f1, d1] = first_index(pm, theta, alpha);
  const double g = pm.rotated(c, s, 0, 3), k = pm.rotated(c, s, 0, 4) - 3.0;
  const double dg = -3.0 * pm.rotated(c, s, 1, 2), dk = -4.0 * pm.rotated(c, s, 1, 3);
  return {f1 + alpha * g * g + (1.0 - alpha) * k * k,
          d1 + 2.0 * alpha * g * dg + 2.0 * (1.0 - alpha) * k * dk};
}

// Maximizes a periodic trigonometric objective over one period centred at 0.
// Returns 0 unless a strictly better angle is found.
double maximize_angle(const std::function<std::pair<double, double>(double)>& f, double period) {
  constexpr int grid = 64;
  const double h = period / grid;
  const double f0 = f(0.0).first;
  double best = 0.0, best_value = f0;
  for (int i = 0; i < grid; ++i) {
    const double t = -0.5 * period + i * h;
    const double v = f(t).first;
    if (v > best_value) {
      best_value = v;
      best = t;
    }
  }
  double lo = best - h, hi = best + h;
  double refined = best;
  if (f(lo).second > 0.0 && f(hi).second < 0.0) {
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (f(mid).second > 0.0) lo = mid; else hi = mid;
    }
    refined = 0.5 * (lo + hi);
  } else {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = f(c).first, fd = f(d).first;
    for (int it = 0; it < 100 && b - a > 1e-14; ++it) {
      if (fc > fd) {
        b = d; d = c; fd = fc;
        c = b - invphi * (b - a); fc = f(c).first;
      } else {
        a = c; c = d; fc = fd;
        d = a + invphi * (b - a); fd = f(d).first;
      }
    }
    refined = 0.5 * (a + b);
  }
  if (f(refined).first > best_value) {
    best = refined;
    best_value = f(refined).first;
  }
  return best_value > f0 ? best : 0.0;
}

// Row k of T = 3 alpha skew_k mean(y_k^2 x) + 4 (1 - alpha) exkurt_k mean(y_k^3 x).
Matrix fixed_point_rows(const Matrix& xst, const Matrix& u, double alpha) {
  const double n = static_cast<double>(xst.rows());
  const Matrix y = xst * u.transpose();
  const Eigen::ArrayXXd y2 = y.array().square();
  const Eigen::ArrayXXd y3 = y2 * y.array();
  const Eigen::RowVectorXd g = y3.colwise().mean();
  const Eigen::RowVectorXd k = (y2 * y2).colwise().mean().array() - 3.0;
  const Matrix a = (y2.matrix().transpose() * xst) / n;
  const Matrix b = (y3.matrix().transpose() * xst) / n;
  return (3.0 * alpha * g.transpose()).asDiagonal() * a + (4.0 * (1.0 - alpha) * k.transpose()).asDiagonal() * b;
}

double symmetric_objective(const Matrix& xst, const Matrix& u, double alpha) {
  const Matrix y = xst * u.transpose();
  double total = 0.0;
  for (Eigen::Index k = 0; k < y.cols(); ++k) total += index_of(column_cumulants(y.col(k)), alpha);
  return total;
}

struct RunResult {
  Matrix u;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

RunResult run_symmetric(const Matrix& xst, Matrix u, double alpha, const SolverOptions& opt) {
  const Eigen::Index p = xst.cols();
  RunResult run;
  double f = symmetric_objective(xst, u, alpha);
  run.trace.push_back(f);
  for (int it = 1; it <= opt.max_iter; ++it) {
    run.iterations = it;
    Matrix next;
    double f_next = -1.0;
    bool accepted = false;
    try {
      next = polar_orthogonal(fixed_point_rows(xst, u, alpha));
      f_next = symmetric_objective(xst, next, alpha);
      accepted = f_next >= f;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::RankDeficient) throw;
    }
    if (!accepted) {
      // Pairwise exact rotations never decrease the objective.
      next = u;
      Matrix y = xst * next.transpose();
      for (Eigen::Index k = 0; k < p - 1; ++k) {
        for (Eigen::Index l = k + 1; l < p; ++l) {
          const PlaneMoments pm(y.col(k), y.col(l));
          const double theta = maximize_angle([&](double t) { return pair_index(pm, t, alpha); },
                                              std::numbers::pi / 2.0);
          if (theta == 0.0) continue;
          const double c = std::cos(theta), s = std::sin(theta);
          const Eigen::RowVectorXd uk = next.row(k), ul = next.row(l);
          next.row(k) = c * uk + s * ul;
          next.row(l) = -s * uk + c * ul;
          const Vector yk = y.col(k), yl = y.col(l);
          y.col(k) = c * yk + s * yl;
          y.col(l) = -s * yk + c * yl;
        }
      }
      f_next = symmetric_objective(xst, next, alpha);
      if (f_next < f) {
        next = u;
        f_next = f;
      }
    }
    double dist = 0.0;
    for (Eigen::Index k = 0; k < p; ++k)
      dist = std::max(dist, sign_blind_distance(next.row(k).transpose(), u.row(k).transpose()));
    u = std::move(next);
    f = f_next;
    run.trace.push_back(f);
    if (dist < opt.tol) {
      run.converged = true;
      break;
    }
  }
  run.u = std::move(u);
  run.objective = f;
  return run;
}

struct StageResult {
  Vector u;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

StageResult run_deflation_stage(const Matrix& xst, const Matrix& projector, const Vector& start, double alpha,
                                const SolverOptions& opt) {
  const double n = static_cast<double>(xst.rows());
  StageResult run;
  Vector u = projector * start;
  u.normalize();
  double f = projection_index(xst * u, alpha);
  run.trace.push_back(f);
  for (int it = 1; it <= opt.max_iter; ++it) {
    run.iterations = it;
    const Vector y = xst * u;
    const Cumulants cu = column_cumulants(y);
    const Eigen::ArrayXd y2 = y.array().square();
    const Vector t = (3.0 * alpha * cu.gamma / n) * (xst.transpose() * y2.matrix()) +
                     (4.0 * (1.0 - alpha) * cu.kappa / n) * (xst.transpose() * (y2 * y.array()).matrix());
    const Vector pt = projector * t;
    Vector next;
    double f_next = -1.0;
    bool accepted = false;
    if (pt.norm() > 0.0) {
      next = pt.normalized();
      f_next = projection_index(xst * next, alpha);
      accepted = f_next >= f;
    }
    if (!accepted) {
      // Exact line search along the projected gradient direction.
      Vector d = pt - u.dot(pt) * u;
      d = projector * d;
      const double dn = d.norm();
      if (!(dn > 1e-300)) {
        run.converged = true;
        break;
      }
      d /= dn;
      const PlaneMoments pm(y, xst * d);
      const double theta =
          maximize_angle([&](double th) { return first_index(pm, th, alpha); }, std::numbers::pi);
      next = std::cos(theta) * u + std::sin(theta) * d;
      next = projector * next;
      next.normalize();
      f_next = projection_index(xst * next, alpha);
      if (theta == 0.0 || f_next < f) {
        next = u;
        f_next = f;
      }
    }
    const double dist = sign_blind_distance(next, u);
    u = std::move(next);
    f = f_next;
    run.trace.push_back(f);
    if (dist < opt.tol) {
      run.converged = true;
      break;
    }
  }
  run.u = u;
  run.objective = f;
  return run;
}

// Orders rows by descending index and fixes their signs.
Matrix canonicalize(const Matrix& w, const Matrix& xc, double alpha) {
  const Matrix y = xc * w.transpose();
  const Eigen::Index p = w.rows();
  std::vector<double> score(p), skew(p);
  for (Eigen::Index k = 0; k < p; ++k) {
    const Cumulants c = column_cumulants(y.col(k));
    score[k] = index_of(c, alpha);
    skew[k] = c.gamma;
  }
  std::vector<Eigen::Index> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return score[a] > score[b]; });
  Matrix out(p, w.cols());
  for (Eigen::Index r = 0; r < p; ++r) {
    const Eigen::Index k = order[r];
    Eigen::RowVectorXd row = w.row(k);
    bool flip = false;
    if (alpha > 0.0) {
      flip = skew[k] < 0.0;
    } else {
      Eigen::Index imax = 0;
      row.cwiseAbs().maxCoeff(&imax);
      flip = row[imax] < 0.0;
    }
    out.row(r) = flip ? Eigen::RowVectorXd(-row) : row;
  }
  return out;
}

Matrix centered(const Matrix& x) { return x.rowwise() - x.colwise().mean(); }

void finish(UnmixingEstimate& est, const Matrix& x) {
  est.w = canonicalize(est.w, centered(x), est.alpha);
  if (!est.converged) est.warnings.push_back(Warning::NoConvergence);
  if (est.objective < 1e-3 * static_cast<double>(x.cols())) est.warnings.push_back(Warning::DegenerateObjective);
}

Matrix start_rotation(int restart, Eigen::Index p, const SolverOptions& opt) {
  if (restart == 0) return Matrix::Identity(p, p);
  RngStream rng(split_seed(opt.seed, static_cast<std::uint64_t>(restart)));
  return random_orthogonal(static_cast<int>(p), rng);
}

// Pairs whose sorted diagonal values cannot be told apart at ten standard errors.
bool near_degenerate(const Matrix& diag_values, const Matrix& std_errors, Eigen::Index k, Eigen::Index l, int which) {
  const double gap = std::abs(diag_values(k, which) - diag_values(l, which));
  const double se = std::hypot(std_errors(k, which), std_errors(l, which));
  return gap < 10.0 * se;
}

}  // namespace

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::DeflationPP: return "deflation";
    case Method::SymmetricPP: return "symmetric";
    case Method::CompoundCumulant: return "compound";
    case Method::AllCumulant: return "jade";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "deflation") return Method::DeflationPP;
  if (name == "symmetric") return Method::SymmetricPP;
  if (name == "compound") return Method::CompoundCumulant;
  if (name == "jade" || name == "allcumulant" || name == "all-cumulant") return Method::AllCumulant;
  throw Error(ErrorKind::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

std::string_view to_string(Warning warning) noexcept {
  switch (warning) {
    case Warning::NoConvergence: return "NoConvergence";
    case Warning::DegenerateObjective: return "DegenerateObjective";
    case Warning::NearDegenerateSpectrum: return "NearDegenerateSpectrum";
  }
  return "Unknown";
}

void SolverOptions::validate() const {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tol must be positive");
  if (max_iter < 1) throw Error(ErrorKind::InvalidArgument, "max_iter must be at least 1");
  if (restarts < 1) throw Error(ErrorKind::InvalidArgument, "restarts must be at least 1");
}

bool UnmixingEstimate::has_warning(Warning w) const {
  return std::find(warnings.begin(), warnings.end(), w) != warnings.end();
}

double projection_index(const Vector& y, double alpha) { return index_of(column_cumulants(y), alpha); }

UnmixingEstimate deflation_pp(const Matrix& x, double alpha, const SolverOptions& options) {
  check_alpha(alpha);
  options.validate();
  const StandardizedSample s = standardize(x);
  const Eigen::Index p = s.p();

  UnmixingEstimate est;
  est.method = Method::DeflationPP;
  est.alpha = alpha;
  est.restarts_used = options.restarts;
  est.converged = true;

  Matrix u(p, p);
  Matrix projector = Matrix::Identity(p, p);
  std::vector<Matrix> starts;
  for (int r = 0; r < options.restarts; ++r) starts.push_back(start_rotation(r, p, options));

  for (Eigen::Index k = 0; k < p; ++k) {
    StageResult best;
    bool have = false;
    for (int r = 0; r < options.restarts; ++r) {
      Vector start = starts[r].row(k).transpose();
      if ((projector * start).norm() < 1e-8) {
        // Identity rows can fall inside the span already found; use the
        // first basis vector that does not.
        for (Eigen::Index j = 0; j < p; ++j) {
          start = Vector::Unit(p, j);
          if ((projector * start).norm() > 0.5) break;
        }
      }
      StageResult run = run_deflation_stage(s.xst, projector, start, alpha, options);
      if (!have || run.objective > best.objective) {
        best = std::move(run);
        have = true;
      }
    }
    Vector uk = projector * best.u;
    uk.normalize();
    u.row(k) = uk.transpose();
    projector -= uk * uk.transpose();
    est.iterations.push_back(best.iterations);
    est.converged = est.converged && best.converged;
    est.objective += best.objective;
    est.objective_trace.push_back(std::move(best.trace));
  }
  est.w = u * s.whitener;
  finish(est, x);
  return est;
}

UnmixingEstimate symmetric_pp(const Matrix& x, double alpha, const SolverOptions& options) {
  check_alpha(alpha);
  options.validate();
  const StandardizedSample s = standardize(x);
  const Eigen::Index p = s.p();

  RunResult best;
  bool have = false;
  for (int r = 0; r < options.restarts; ++r) {
    RunResult run = run_symmetric(s.xst, start_rotation(r, p, options), alpha, options);
    if (!have || run.objective > best.objective) {
      best = std::move(run);
      have = true;
    }
  }
  UnmixingEstimate est;
  est.method = Method::SymmetricPP;
  est.alpha = alpha;
  est.restarts_used = options.restarts;
  est.iterations = {best.iterations};
  est.converged = best.converged;
  est.objective = best.objective;
  est.objective_trace = {std::move(best.trace)};
  est.w = best.u * s.whitener;
  finish(est, x);
  return est;
}

UnmixingEstimate fobi(const Matrix& x) {
  const StandardizedSample s = standardize(x);
  const Vector radius2 = s.xst.rowwise().squaredNorm();
  const Matrix weighted = s.xst.array().colwise() * radius2.array();
  Matrix b = (weighted.transpose() * s.xst) / static_cast<double>(s.n());
  b = 0.5 * (b + b.transpose());
  const SymmetricEigen eig = symmetric_eigen(b);
  UnmixingEstimate est;
  est.method = Method::CompoundCumulant;
  est.alpha = 0.0;
  est.converged = true;
  est.restarts_used = 1;
  est.iterations = {eig.sweeps};
  est.w = eig.vectors.transpose() * s.whitener;
  est.objective = eig.values.squaredNorm();
  est.objective_trace = {{est.objective}};
  return est;
}

UnmixingEstimate compound_cumulant(const Matrix& x, double alpha, const std::optional<Standardizer>& standardizer,
                                   const SolverOptions& options) {
  check_alpha(alpha);
  options.validate();
  const Standardizer std_choice =
      standardizer ? *standardizer : (alpha == 0.0 ? Standardizer::fobi() : Standardizer::symmetric_pp(alpha));

  UnmixingEstimate est;
  est.method = Method::CompoundCumulant;
  est.alpha = alpha;
  est.restarts_used = options.restarts;
  est.converged = true;

  Matrix w0;
  switch (std_choice.kind) {
    case Standardizer::Kind::Fobi: {
      const UnmixingEstimate f = fobi(x);
      w0 = f.w;
      est.iterations = f.iterations;
      break;
    }
    case Standardizer::Kind::SymmetricPP: {
      const UnmixingEstimate sp = symmetric_pp(x, std_choice.alpha, options);
      w0 = sp.w;
      est.iterations = sp.iterations;
      est.converged = sp.converged;
      break;
    }
    case Standardizer::Kind::Custom:
      w0 = std_choice.w0;
      break;
  }
  // The third-cumulant compound matrix is not invariant to row signs of the
  // standardizer, so fix them by skewness before using it.
  {
    const Matrix y = centered(x) * w0.transpose();
    for (Eigen::Index k = 0; k < y.cols(); ++k)
      if (column_cumulants(y.col(k)).gamma < 0.0) w0.row(k) = -w0.row(k);
  }
  const StandardizedSample s = standardize(x, w0);
  const Eigen::Index p = s.p();
  const CompoundMatrices cm = compound_matrices(s);

  Matrix u;
  if (alpha == 1.0 || alpha == 0.0) {
    const SymmetricEigen eig = symmetric_eigen(alpha == 1.0 ? cm.c3 : cm.c4);
    u = eig.vectors.transpose();
    est.iterations.push_back(eig.sweeps);
    est.objective = eig.values.squaredNorm();
    est.objective_trace = {{est.objective}};
  } else {
    const std::array<Matrix, 2> mats{cm.c3, cm.c4};
    const std::array<double, 2> weights{alpha, 1.0 - alpha};
    const JointDiagOptions jd_opt{std::min(options.tol, 1e-10), std::max(options.max_iter, 100)};
    JointDiagResult best;
    bool have = false;
    for (int r = 0; r < options.restarts; ++r) {
      JointDiagResult run = joint_diagonalize(mats, weights, jd_opt, start_rotation(r, p, options));
      if (!have || run.objective > best.objective) {
        best = std::move(run);
        have = true;
      }
    }
    u = best.u;
    est.iterations.push_back(best.sweeps);
    est.converged = est.converged && best.converged;
    est.objective = best.objective;
    est.objective_trace = {best.objective_trace};
  }

  // Sampling-noise check on the recovered diagonal values.
  {
    const Matrix y = s.xst * u.transpose();
    const double rn = std::sqrt(static_cast<double>(s.n()));
    Matrix values(p, 2), errors(p, 2);
    const Matrix d3 = u * cm.c3 * u.transpose(), d4 = u * cm.c4 * u.transpose();
    for (Eigen::Index k = 0; k < p; ++k) {
      const Eigen::ArrayXd y3 = y.col(k).array().cube();
      const Eigen::ArrayXd y4 = y.col(k).array().square().square();
      values(k, 0) = d3(k, k);
      values(k, 1) = d4(k, k);
      errors(k, 0) = std::sqrt((y3 - y3.mean()).square().mean()) / rn;
      errors(k, 1) = std::sqrt((y4 - y4.mean()).square().mean()) / rn;
    }
    bool degenerate = false;
    for (Eigen::Index k = 0; k < p && !degenerate; ++k) {
      for (Eigen::Index l = k + 1; l < p && !degenerate; ++l) {
        const bool by3 = near_degenerate(values, errors, k, l, 0);
        const bool by4 = near_degenerate(values, errors, k, l, 1);
        degenerate = alpha == 1.0 ? by3 : (alpha == 0.0 ? by4 : (by3 && by4));
      }
    }
    if (degenerate) est.warnings.push_back(Warning::NearDegenerateSpectrum);
  }

  est.w = u * s.whitener;
  est.w = canonicalize(est.w, centered(x), alpha);
  if (!est.converged) est.warnings.push_back(Warning::NoConvergence);
  return est;
}

UnmixingEstimate all_cumulant(const Matrix& x, double alpha, const SolverOptions& options) {
  check_alpha(alpha);
  options.validate();
  const StandardizedSample s = standardize(x);
  const Eigen::Index p = s.p();

  std::vector<Matrix> mats;
  std::vector<double> weights;
  if (alpha > 0.0) {
    for (auto& m : all_cum3_matrices(s)) {
      mats.push_back(std::move(m));
      weights.push_back(alpha);
    }
  }
  if (alpha < 1.0) {
    for (auto& m : all_cum4_matrices(s)) {
      mats.push_back(std::move(m));
      weights.push_back(1.0 - alpha);
    }
  }
  const JointDiagOptions jd_opt{std::min(options.tol, 1e-10), std::max(options.max_iter, 100)};
  JointDiagResult best;
  bool have = false;
  for (int r = 0; r < options.restarts; ++r) {
    JointDiagResult run = joint_diagonalize(mats, weights, jd_opt, start_rotation(r, p, options));
    if (!have || run.objective > best.objective) {
      best = std::move(run);
      have = true;
    }
  }
  UnmixingEstimate est;
  est.method = Method::AllCumulant;
  est.alpha = alpha;
  est.restarts_used = options.restarts;
  est.iterations = {best.sweeps};
  est.converged = best.converged;
  est.objective = best.objective;
  est.objective_trace = {best.objective_trace};
  est.w = best.u * s.whitener;
  finish(est, x);
  // The diagonality objective is on a different scale from the projection
  // index, so judge degeneracy on the recovered components instead.
  std::erase(est.warnings, Warning::DegenerateObjective);
  {
    const Matrix y = centered(x) * est.w.transpose();
    double index_sum = 0.0;
    for (Eigen::Index k = 0; k < p; ++k) index_sum += projection_index(y.col(k), alpha);
    if (index_sum < 1e-3 * static_cast<double>(p)) est.warnings.push_back(Warning::DegenerateObjective);
  }
  return est;
}

UnmixingEstimate estimate(Method method, const Matrix& x, double alpha, const SolverOptions& options) {
  switch (method) {
    case Method::DeflationPP: return deflation_pp(x, alpha, options);
    case Method::SymmetricPP: return symmetric_pp(x, alpha, options);
    case Method::CompoundCumulant: return compound_cumulant(x, alpha, std::nullopt, options);
    case Method::AllCumulant: return all_cumulant(x, alpha, options);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown method");
}

}  // namespace cumica
