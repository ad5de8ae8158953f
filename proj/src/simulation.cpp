#include "cumica/simulation.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "cumica/assignment.hpp"
#include "cumica/errors.hpp"

namespace cumica {

namespace {

constexpr double kZeroTol = 1e-12;

bool is_zero(double v) { return std::abs(v) < kZeroTol; }

bool same(double a, double b) { return std::abs(a - b) <= kZeroTol * std::max({1.0, std::abs(a), std::abs(b)}); }

double condition_number(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& sv = svd.singularValues();
  return sv[sv.size() - 1] > 0.0 ? sv[0] / sv[sv.size() - 1] : std::numeric_limits<double>::infinity();
}

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> out(steps);
  for (int i = 0; i < steps; ++i) out[i] = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
  return out;
}

}  // namespace

Matrix mixing_matrix(const IcModelSpec& spec) {
  const Eigen::Index p = spec.p();
  switch (spec.mixing) {
    case IcModelSpec::Mixing::Identity:
      return Matrix::Identity(p, p);
    case IcModelSpec::Mixing::Given:
      if (spec.omega.rows() != p || spec.omega.cols() != p)
        throw Error(ErrorKind::InvalidSpec, "mixing matrix must be p x p");
      if (!(condition_number(spec.omega) < 1e8)) throw Error(ErrorKind::InvalidSpec, "mixing matrix is ill-conditioned");
      return spec.omega;
    case IcModelSpec::Mixing::RandomFullRank: {
      for (std::uint64_t attempt = 0;; ++attempt) {
        RngStream rng(split_seed(spec.mixing_seed, attempt));
        std::normal_distribution<double> normal(0.0, 1.0);
        Matrix omega(p, p);
        for (Eigen::Index j = 0; j < p; ++j)
          for (Eigen::Index i = 0; i < p; ++i) omega(i, j) = normal(rng);
        if (condition_number(omega) < 1e8) return omega;
      }
    }
  }
  throw Error(ErrorKind::InvalidSpec, "unknown mixing");
}

IcSample generate_ic_sample(const IcModelSpec& spec, std::size_t n, RngStream& rng) {
  const Eigen::Index p = spec.p();
  if (p < 2) throw Error(ErrorKind::InvalidSpec, "model needs at least two sources");
  if (n <= static_cast<std::size_t>(p)) throw Error(ErrorKind::InvalidArgument, "sample size must exceed p");
  if (spec.shift.size() != 0 && spec.shift.size() != p) throw Error(ErrorKind::InvalidSpec, "shift must have length p");
  IcSample s;
  s.omega = mixing_matrix(spec);
  s.z.resize(static_cast<Eigen::Index>(n), p);
  for (Eigen::Index k = 0; k < p; ++k) s.z.col(k) = sample_source(spec.sources[k], n, rng);
  s.x = s.z * s.omega.transpose();
  if (spec.shift.size() == p) s.x.rowwise() += spec.shift.transpose();
  return s;
}

double mdi(const Matrix& w, const Matrix& omega) {
  if (w.rows() != w.cols() || omega.rows() != omega.cols() || w.rows() != omega.rows())
    throw Error(ErrorKind::DimensionMismatch, "W and Omega must be square of the same size");
  const Eigen::Index p = w.rows();
  if (p < 2) throw Error(ErrorKind::InvalidArgument, "index needs p >= 2");
  const Matrix g = w * omega;
  if (!g.allFinite() || !(condition_number(g) < 1e14)) throw Error(ErrorKind::SingularInput, "W Omega is singular");
  Matrix score = g.array().square();
  const Vector norms = score.rowwise().sum();
  for (Eigen::Index i = 0; i < p; ++i) score.row(i) /= norms[i];
  const std::vector<int> col = max_assignment(score);
  double matched = 0.0;
  for (Eigen::Index i = 0; i < p; ++i) matched += score(i, col[i]);
  const double d = std::sqrt(std::max(0.0, static_cast<double>(p) - matched) / static_cast<double>(p - 1));
  return std::clamp(d, 0.0, 1.0);
}

Matrix align_to_identity(const Matrix& w) {
  const Eigen::Index p = w.rows();
  // score(i, r): row r of W placed at position i.
  const Matrix score = w.cwiseAbs().transpose();
  const std::vector<int> source = max_assignment(score);
  Matrix out(p, w.cols());
  for (Eigen::Index i = 0; i < p; ++i) {
    const Eigen::Index r = source[i];
    out.row(i) = w(r, i) < 0.0 ? Eigen::RowVectorXd(-w.row(r)) : Eigen::RowVectorXd(w.row(r));
  }
  return out;
}

int required_assumption(Method method, double alpha) {
  const bool compound = method == Method::CompoundCumulant;
  if (alpha == 1.0) return compound ? 5 : 3;
  if (alpha == 0.0) return compound ? 6 : 4;
  return compound ? 8 : 7;
}

AssumptionReport check_assumptions(std::span<const MomentProfile> profiles, Method method, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must lie in [0, 1]");
  AssumptionReport rep;
  rep.required = required_assumption(method, alpha);
  const int p = static_cast<int>(profiles.size());
  auto fail = [&](int component, std::string message) {
    rep.holds = false;
    rep.component = component;
    rep.message = std::move(message);
    return rep;
  };
  switch (rep.required) {
    case 3:
    case 4:
    case 7: {
      int zeros = 0;
      for (int k = 0; k < p; ++k) {
        const auto& c = profiles[k];
        const bool zero = rep.required == 3   ? is_zero(c.gamma)
                          : rep.required == 4 ? is_zero(c.kappa)
                                              : is_zero(c.gamma) && is_zero(c.kappa);
        if (zero && ++zeros > 1) {
          const char* what = rep.required == 3   ? "skewness"
                             : rep.required == 4 ? "excess kurtosis"
                                                 : "skewness and excess kurtosis";
          return fail(k, std::string("more than one component has zero ") + what);
        }
      }
      break;
    }
    case 5:
    case 6:
    case 8:
      for (int k = 0; k < p; ++k) {
        for (int l = 0; l < k; ++l) {
          const bool eq_g = same(profiles[k].gamma, profiles[l].gamma);
          const bool eq_k = same(profiles[k].kappa, profiles[l].kappa);
          const bool tie = rep.required == 5 ? eq_g : rep.required == 6 ? eq_k : (eq_g && eq_k);
          if (tie)
            return fail(k, "component shares its " +
                               std::string(rep.required == 5   ? "skewness"
                                           : rep.required == 6 ? "excess kurtosis"
                                                               : "skewness and excess kurtosis") +
                               " with component " + std::to_string(l + 1));
        }
      }
      break;
  }
  return rep;
}

void require_assumptions(std::span<const MomentProfile> profiles, Method method, double alpha) {
  const AssumptionReport rep = check_assumptions(profiles, method, alpha);
  if (!rep.holds)
    throw Error(ErrorKind::AssumptionViolated, "assumption " + std::to_string(rep.required) + ": " + rep.message,
                rep.component);
}

AsvTable population_asv(Method method, std::span<const MomentProfile> profiles, double alpha) {
  if (method != Method::DeflationPP) return asv_table(method, profiles, alpha);
  const std::size_t p = profiles.size();
  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto index = [&](std::size_t k) {
    return alpha * profiles[k].gamma * profiles[k].gamma + (1.0 - alpha) * profiles[k].kappa * profiles[k].kappa;
  };
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return index(a) > index(b); });
  std::vector<MomentProfile> sorted;
  for (auto k : order) sorted.push_back(profiles[k]);
  AsvTable sorted_table;
  try {
    sorted_table = asv_deflation(sorted, alpha);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ZeroDenominator && e.component() >= 0)
      throw Error(ErrorKind::ZeroDenominator, "deflation denominator vanishes", static_cast<int>(order[e.component()]));
    throw;
  }
  AsvTable t = sorted_table;
  for (std::size_t a = 0; a < p; ++a) {
    t.diag[order[a]] = sorted_table.diag[a];
    for (std::size_t b = 0; b < p; ++b) t.offdiag(order[a], order[b]) = sorted_table.offdiag(a, b);
  }
  return t;
}

int resolve_threads(std::optional<int> requested) {
  if (requested && *requested > 0) return *requested;
  if (const char* env = std::getenv("CUMICA_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

McResult monte_carlo_experiment(const IcModelSpec& model, Method method, double alpha, std::size_t n,
                                int replications, std::uint64_t master_seed, const McOptions& options) {
  if (replications < 2) throw Error(ErrorKind::InvalidArgument, "at least two replications are needed");
  const auto start_time = std::chrono::steady_clock::now();
  const Eigen::Index p = model.p();
  std::vector<MomentProfile> profiles;
  for (const auto& s : model.sources) profiles.push_back(moment_profile(s));
  require_assumptions(profiles, method, alpha);

  McResult res;
  res.method = method;
  res.alpha = alpha;
  res.n = n;
  res.replications = replications;
  const AsvTable table = population_asv(method, profiles, alpha);
  res.asv = table.offdiag;
  res.asv.diagonal() = table.diag;

  IcModelSpec identity_model;
  identity_model.sources = model.sources;

  std::vector<std::optional<Matrix>> estimates(replications);
  std::vector<double> indices(replications, std::numeric_limits<double>::quiet_NaN());
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < replications; r = next++) {
      const std::uint64_t seed = split_seed(master_seed, static_cast<std::uint64_t>(r));
      try {
        RngStream rng(seed);
        const IcSample sample = generate_ic_sample(identity_model, n, rng);
        SolverOptions solver = options.solver;
        solver.seed = seed;
        const UnmixingEstimate est = estimate(method, sample.x, alpha, solver);
        if (!est.converged) continue;
        estimates[r] = align_to_identity(est.w);
        indices[r] = mdi(est.w, Matrix::Identity(p, p));
      } catch (const std::exception&) {
        estimates[r].reset();
      }
    }
  };
  const int threads = std::min(options.threads > 0 ? options.threads : resolve_threads(), replications);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  Matrix mean = Matrix::Zero(p, p);
  int ok = 0;
  std::vector<double> ok_indices;
  for (int r = 0; r < replications; ++r) {
    if (!estimates[r]) continue;
    mean += *estimates[r];
    ++ok;
    ok_indices.push_back(indices[r]);
  }
  res.failed = replications - ok;
  if (res.failed * 100 > replications || ok < 2)
    throw Error(ErrorKind::RunFailed, std::to_string(res.failed) + " of " + std::to_string(replications) +
                                          " replications failed");
  mean /= ok;
  res.n_var = Matrix::Zero(p, p);
  for (int r = 0; r < replications; ++r)
    if (estimates[r]) res.n_var += (*estimates[r] - mean).array().square().matrix();
  res.n_var *= static_cast<double>(n) / (ok - 1);

  res.mdi_mean = std::accumulate(ok_indices.begin(), ok_indices.end(), 0.0) / ok;
  std::sort(ok_indices.begin(), ok_indices.end());
  const std::size_t h = ok_indices.size() / 2;
  res.mdi_median = ok_indices.size() % 2 ? ok_indices[h] : 0.5 * (ok_indices[h - 1] + ok_indices[h]);
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
  return res;
}

SourceSpec FamilyRange::at(double value) const {
  switch (family) {
    case Family::Gamma: return SourceSpec::gamma(value);
    case Family::ExpPower: return SourceSpec::exp_power(value);
    case Family::GaussMixture: return SourceSpec::mixture(value, mu);
    default: throw Error(ErrorKind::InvalidSpec, "family has no sweep parameter");
  }
}

ContourGrid contour_grid(const FamilyRange& x, const FamilyRange& y, Method method, double alpha, int steps) {
  if (steps < 2) throw Error(ErrorKind::InvalidArgument, "contour grid needs at least two steps");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must lie in [0, 1]");
  x.at(x.lo);  // rejects families without a parameter
  y.at(y.lo);
  ContourGrid g;
  g.method = method;
  g.alpha = alpha;
  g.xs = linspace(x.lo, x.hi, steps);
  g.ys = linspace(y.lo, y.hi, steps);
  g.values.resize(steps, steps);
  for (int i = 0; i < steps; ++i) {
    for (int j = 0; j < steps; ++j) {
      double v = std::numeric_limits<double>::quiet_NaN();
      try {
        const std::array<MomentProfile, 2> profiles{moment_profile(x.at(g.xs[i])), moment_profile(y.at(g.ys[j]))};
        const AsvTable t = population_asv(method, profiles, alpha);
        v = offdiag_criterion(t, 0, 1);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::ZeroDenominator) v = std::numeric_limits<double>::infinity();
      }
      g.values(i, j) = v;
    }
  }
  return g;
}

Vector table_statistics(const Matrix& z, Eigen::Index k, Eigen::Index l, Eigen::Index m_prime, Eigen::Index m,
                        double gamma_k, double gamma_l) {
  const Eigen::Index p = z.cols();
  for (Eigen::Index i : {k, l, m_prime, m})
    if (i < 0 || i >= p) throw Error(ErrorKind::IndexOutOfRange, "statistic index out of range", static_cast<int>(i));
  const auto zk = z.col(k).array(), zl = z.col(l).array();
  const auto zmp = z.col(m_prime).array(), zm = z.col(m).array();
  Vector s(7);
  s[0] = ((zk.cube() - gamma_k) * zl).mean();
  s[1] = ((zl.cube() - gamma_l) * zk).mean();
  s[2] = ((zk.square() - 1.0) * zl).mean();
  s[3] = ((zl.square() - 1.0) * zk).mean();
  s[4] = (zmp.square() * zk * zl).mean();
  s[5] = (zm * zk * zl).mean();
  s[6] = (zk * zl).mean();
  return s;
}

}  // namespace cumica
