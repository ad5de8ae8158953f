#include "cumica/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "cumica/asymptotics.hpp"
#include "cumica/csv.hpp"
#include "cumica/errors.hpp"
#include "cumica/estimators.hpp"
#include "cumica/simulation.hpp"

namespace cumica::cli {

namespace {

const std::vector<std::string> kMethods{"deflation", "symmetric", "compound", "jade", "fobi"};

struct MethodChoice {
  Method method;
  double alpha;
  bool fobi = false;
};

MethodChoice resolve_method(const std::string& name, double alpha) {
  if (name == "fobi") return {Method::CompoundCumulant, 0.0, true};
  return {parse_method(name), alpha};
}

std::string join_numbers(const Eigen::RowVectorXd& row) {
  std::string s;
  for (Eigen::Index i = 0; i < row.size(); ++i) s += (i ? "," : "") + format_number(row[i]);
  return s;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item));
  if (out.empty()) throw Error(ErrorKind::ParseError, "empty number list");
  return out;
}

std::pair<double, double> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::ParseError, "range must look like lo:hi");
  return {parse_number(text.substr(0, colon)), parse_number(text.substr(colon + 1))};
}

FamilyRange parse_family(const std::string& text, const std::string& range) {
  FamilyRange f;
  if (text == "gamma") {
    f.family = Family::Gamma;
  } else if (text == "ep") {
    f.family = Family::ExpPower;
  } else if (text.rfind("mix:", 0) == 0) {
    f.family = Family::GaussMixture;
    f.mu = parse_number(text.substr(4));
  } else {
    throw Error(ErrorKind::InvalidSpec, "family must be gamma, ep or mix:<mu>");
  }
  std::tie(f.lo, f.hi) = parse_range(range);
  return f;
}

struct EstimateArgs {
  std::string in, out, method = "symmetric", standardizer;
  double alpha = 0.8;
  SolverOptions solver;
};

struct SimulateArgs {
  std::string sources, method = "symmetric", mixing = "identity", out;
  double alpha = 0.8;
  std::size_t n = 10000;
  int reps = 100;
  std::uint64_t seed = 0;
  bool emit = false;
  int restarts = SolverOptions{}.restarts;
  int threads = 0;
};

struct AsvArgs {
  std::string method = "symmetric", sources, out;
  double alpha = 0.8;
};

struct OptimalArgs {
  std::string pi, mu, out;
  double grid = 1e-3;
};

struct ContourArgs {
  std::string family_x, range_x, family_y, range_y, method = "symmetric", out;
  double alpha = 0.8;
  int steps = 50;
};

struct CheckArgs {
  std::string sources, method = "symmetric";
  double alpha = 0.8;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");
  file << text;
}

int do_estimate(const EstimateArgs& a, std::ostream& out) {
  const MethodChoice m = resolve_method(a.method, a.alpha);
  std::optional<Standardizer> standardizer;
  if (m.fobi) standardizer = Standardizer::fobi();
  if (!a.standardizer.empty()) {
    if (m.method != Method::CompoundCumulant)
      throw Error(ErrorKind::InvalidArgument, "--standardizer only applies to the compound method");
    if (a.standardizer == "fobi") {
      standardizer = Standardizer::fobi();
    } else if (a.standardizer == "symmetric") {
      standardizer = Standardizer::symmetric_pp(m.alpha);
    } else if (a.standardizer.rfind("custom:", 0) == 0) {
      standardizer = Standardizer::custom(read_csv_file(a.standardizer.substr(7)).data);
    } else {
      throw Error(ErrorKind::InvalidArgument, "standardizer must be fobi, symmetric or custom:<file>");
    }
  }
  const Matrix x = read_csv_file(a.in).data;
  a.solver.validate();

  const UnmixingEstimate est = m.method == Method::CompoundCumulant
                                   ? compound_cumulant(x, m.alpha, standardizer, a.solver)
                                   : estimate(m.method, x, m.alpha, a.solver);
  std::ostringstream os;
  os << "# cumica estimate method=" << a.method << " alpha=" << format_number(m.alpha)
     << " seed=" << a.solver.seed << " tol=" << format_number(a.solver.tol) << " restarts=" << a.solver.restarts
     << '\n';
  os << "# converged=" << (est.converged ? 1 : 0) << " objective=" << format_number(est.objective) << '\n';
  for (auto w : est.warnings) os << "# warning=" << to_string(w) << '\n';
  std::vector<std::string> header;
  for (Eigen::Index j = 0; j < est.w.cols(); ++j) header.push_back("x" + std::to_string(j + 1));
  write_csv(os, est.w, header);
  emit(a.out, os.str(), out);
  return 0;
}

int do_simulate(const SimulateArgs& a, std::ostream& out) {
  const MethodChoice m = resolve_method(a.method, a.alpha);
  IcModelSpec model;
  model.sources = parse_source_list(a.sources);
  if (a.mixing == "random") {
    model.mixing = IcModelSpec::Mixing::RandomFullRank;
    model.mixing_seed = a.seed;
  }
  std::ostringstream os;
  os << "# cumica simulate method=" << a.method << " alpha=" << format_number(m.alpha) << " seed=" << a.seed
     << " sources=" << a.sources << " mixing=" << a.mixing << " n=" << a.n;
  if (a.emit) {
    os << '\n';
    RngStream rng(a.seed);
    const IcSample s = generate_ic_sample(model, a.n, rng);
    for (Eigen::Index i = 0; i < s.omega.rows(); ++i) os << "# omega=" << join_numbers(s.omega.row(i)) << '\n';
    std::vector<std::string> header;
    for (Eigen::Index j = 0; j < s.x.cols(); ++j) header.push_back("x" + std::to_string(j + 1));
    write_csv(os, s.x, header);
    emit(a.out, os.str(), out);
    return 0;
  }
  os << " reps=" << a.reps << '\n';
  McOptions opt;
  opt.solver.restarts = a.restarts;
  opt.threads = resolve_threads(a.threads > 0 ? std::optional<int>(a.threads) : std::nullopt);
  const McResult r = monte_carlo_experiment(model, m.method, m.alpha, a.n, a.reps, a.seed, opt);
  os << "# failed=" << r.failed << " mdi_mean=" << format_number(r.mdi_mean)
     << " mdi_median=" << format_number(r.mdi_median) << " wall_seconds=" << format_number(r.wall_seconds) << '\n';
  os << "method,alpha,n,reps,k,l,n_var,asv,rel_err\n";
  for (Eigen::Index k = 0; k < r.n_var.rows(); ++k) {
    for (Eigen::Index l = 0; l < r.n_var.cols(); ++l) {
      os << a.method << ',' << format_number(r.alpha) << ',' << r.n << ',' << r.replications - r.failed << ','
         << k + 1 << ',' << l + 1 << ',' << format_number(r.n_var(k, l)) << ',' << format_number(r.asv(k, l)) << ','
         << format_number(r.n_var(k, l) / r.asv(k, l) - 1.0) << '\n';
    }
  }
  emit(a.out, os.str(), out);
  return 0;
}

int do_asv(const AsvArgs& a, std::ostream& out) {
  const MethodChoice m = resolve_method(a.method, a.alpha);
  std::vector<MomentProfile> profiles;
  for (const auto& s : parse_source_list(a.sources)) profiles.push_back(moment_profile(s));
  const AsvTable t = population_asv(m.method, profiles, m.alpha);
  std::ostringstream os;
  os << "# cumica asv method=" << a.method << " alpha=" << format_number(m.alpha) << " sources=" << a.sources << '\n';
  os << "k,l,asv\n";
  for (Eigen::Index k = 0; k < t.offdiag.rows(); ++k)
    for (Eigen::Index l = 0; l < t.offdiag.cols(); ++l)
      os << k + 1 << ',' << l + 1 << ',' << format_number(k == l ? t.diag[k] : t.offdiag(k, l)) << '\n';
  emit(a.out, os.str(), out);
  return 0;
}

int do_optimal(const OptimalArgs& a, std::ostream& out) {
  const auto pis = parse_number_list(a.pi), mus = parse_number_list(a.mu);
  std::ostringstream os;
  os << "# cumica optimal-alpha pi=" << a.pi << " mu=" << a.mu << " grid=" << format_number(a.grid) << '\n';
  os << "pi,mu,alpha_star,f_star\n";
  for (double mu : mus) {
    for (double pi : pis) {
      const OptimalAlpha r = optimal_alpha(pi, mu, a.grid);
      os << format_number(pi) << ',' << format_number(mu) << ',' << format_number(r.alpha_star) << ','
         << format_number(r.f_star) << '\n';
    }
  }
  emit(a.out, os.str(), out);
  return 0;
}

int do_contour(const ContourArgs& a, std::ostream& out) {
  const MethodChoice m = resolve_method(a.method, a.alpha);
  const FamilyRange fx = parse_family(a.family_x, a.range_x), fy = parse_family(a.family_y, a.range_y);
  const ContourGrid g = contour_grid(fx, fy, m.method, m.alpha, a.steps);
  std::ostringstream os;
  os << "# cumica contour method=" << a.method << " alpha=" << format_number(m.alpha) << " family_x=" << a.family_x
     << " range_x=" << a.range_x << " family_y=" << a.family_y << " range_y=" << a.range_y << " steps=" << a.steps
     << '\n';
  os << "method,alpha,x,y,criterion\n";
  for (std::size_t i = 0; i < g.xs.size(); ++i)
    for (std::size_t j = 0; j < g.ys.size(); ++j)
      os << a.method << ',' << format_number(m.alpha) << ',' << format_number(g.xs[i]) << ','
         << format_number(g.ys[j]) << ',' << format_number(g.values(i, j)) << '\n';
  emit(a.out, os.str(), out);
  return 0;
}

int do_check(const CheckArgs& a, std::ostream& out) {
  const MethodChoice m = resolve_method(a.method, a.alpha);
  const auto specs = parse_source_list(a.sources);
  std::vector<MomentProfile> profiles;
  for (const auto& s : specs) profiles.push_back(moment_profile(s));
  const AssumptionReport rep = check_assumptions(profiles, m.method, m.alpha);
  out << "# cumica check-assumptions method=" << a.method << " alpha=" << format_number(m.alpha)
      << " sources=" << a.sources << '\n';
  for (std::size_t k = 0; k < profiles.size(); ++k) {
    const auto& c = profiles[k];
    out << "# component=" << k + 1 << " source=" << to_string(specs[k]) << " gamma=" << format_number(c.gamma)
        << " kappa=" << format_number(c.kappa) << '\n';
  }
  out << "assumption,holds,component\n";
  out << rep.required << ',' << (rep.holds ? 1 : 0) << ',' << (rep.component >= 0 ? rep.component + 1 : 0) << '\n';
  if (!rep.holds) throw Error(ErrorKind::AssumptionViolated, "assumption " + std::to_string(rep.required) + ": " +
                                                                 rep.message, rep.component);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Independent component analysis with third and fourth cumulants", "cumica"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key = value file ([subcommand] sections)");

  EstimateArgs ea;
  auto* est = app.add_subcommand("estimate", "Estimate an unmixing matrix from a data CSV");
  est->add_option("--in", ea.in, "Data CSV, observations in rows")->required()->check(CLI::ExistingFile);
  est->add_option("--method", ea.method)->check(CLI::IsMember(kMethods))->capture_default_str();
  est->add_option("--alpha", ea.alpha, "Weight on squared skewness")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  est->add_option("--standardizer", ea.standardizer, "fobi | symmetric | custom:<file> (compound only)");
  est->add_option("--tol", ea.solver.tol)->capture_default_str();
  est->add_option("--max-iter", ea.solver.max_iter)->capture_default_str();
  est->add_option("--restarts", ea.solver.restarts)->capture_default_str();
  est->add_option("--seed", ea.solver.seed)->capture_default_str();
  est->add_option("--out", ea.out, "Output file (default: standard output)");

  SimulateArgs sa;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo check of asymptotic variances, or emit one sample");
  sim->add_option("--sources", sa.sources, "Comma-separated sources, e.g. gamma:1,gamma:2,ep:1")->required();
  sim->add_option("--method", sa.method)->check(CLI::IsMember(kMethods))->capture_default_str();
  sim->add_option("--alpha", sa.alpha)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  sim->add_option("--n", sa.n)->capture_default_str();
  sim->add_option("--reps", sa.reps)->capture_default_str();
  sim->add_option("--seed", sa.seed)->capture_default_str();
  sim->add_option("--mixing", sa.mixing)->check(CLI::IsMember({"identity", "random"}))->capture_default_str();
  sim->add_flag("--emit-data", sa.emit, "Write one sample X instead of running replications");
  sim->add_option("--restarts", sa.restarts)->capture_default_str();
  sim->add_option("--threads", sa.threads, "Worker threads (default: CUMICA_THREADS or all cores)");
  sim->add_option("--out", sa.out);

  AsvArgs aa;
  auto* asv = app.add_subcommand("asv", "Asymptotic variance table");
  asv->add_option("--method", aa.method)->check(CLI::IsMember(kMethods))->capture_default_str();
  asv->add_option("--alpha", aa.alpha)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  asv->add_option("--sources", aa.sources)->required();
  asv->add_option("--out", aa.out);

  OptimalArgs oa;
  auto* opt = app.add_subcommand("optimal-alpha", "Optimal weight for a two-cluster normal mixture");
  opt->add_option("--pi", oa.pi, "Mixture weight(s), comma-separated")->required();
  opt->add_option("--mu", oa.mu, "Location(s), comma-separated")->required();
  opt->add_option("--grid", oa.grid, "Grid step before refinement")->capture_default_str();
  opt->add_option("--out", oa.out);

  ContourArgs ca;
  auto* con = app.add_subcommand("contour", "Grid of ASV(w12) + ASV(w21) over two source families");
  con->add_option("--family-x", ca.family_x, "gamma | ep | mix:<mu>")->required();
  con->add_option("--range-x", ca.range_x, "lo:hi")->required();
  con->add_option("--family-y", ca.family_y)->required();
  con->add_option("--range-y", ca.range_y)->required();
  con->add_option("--method", ca.method)->check(CLI::IsMember(kMethods))->capture_default_str();
  con->add_option("--alpha", ca.alpha)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  con->add_option("--steps", ca.steps)->check(CLI::Range(2, 100000))->capture_default_str();
  con->add_option("--out", ca.out);

  CheckArgs ka;
  auto* chk = app.add_subcommand("check-assumptions", "Check the moment assumptions a method relies on");
  chk->add_option("--sources", ka.sources)->required();
  chk->add_option("--method", ka.method)->check(CLI::IsMember(kMethods))->capture_default_str();
  chk->add_option("--alpha", ka.alpha)->check(CLI::Range(0.0, 1.0))->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (est->parsed()) return do_estimate(ea, out);
    if (sim->parsed()) return do_simulate(sa, out);
    if (asv->parsed()) return do_asv(aa, out);
    if (opt->parsed()) return do_optimal(oa, out);
    if (con->parsed()) return do_contour(ca, out);
    if (chk->parsed()) return do_check(ka, out);
  } catch (const Error& e) {
    const bool usage = e.kind() == ErrorKind::InvalidSpec || e.kind() == ErrorKind::ParseError ||
                       e.kind() == ErrorKind::InvalidArgument;
    err << "error: " << e.what();
    if (e.component() >= 0) err << " (component " << e.component() + 1 << ")";
    err << '\n';
    if (usage) {
      err << '\n' << app.help();
      return 1;
    }
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace cumica::cli
