#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "cumica/asymptotics.hpp"
#include "cumica/cumulants.hpp"
#include "cumica/distributions.hpp"
#include "cumica/errors.hpp"
#include "cumica/estimators.hpp"
#include "cumica/simulation.hpp"

namespace py = pybind11;
using namespace cumica;

namespace {

std::vector<MomentProfile> profiles_from(const std::vector<std::string>& sources) {
  std::vector<MomentProfile> out;
  for (const auto& s : sources) out.push_back(moment_profile(parse_source(s)));
  return out;
}

std::vector<SourceSpec> specs_from(const std::vector<std::string>& sources) {
  std::vector<SourceSpec> out;
  for (const auto& s : sources) out.push_back(parse_source(s));
  return out;
}

SolverOptions solver_options(double tol, int max_iter, int restarts, std::uint64_t seed) {
  SolverOptions o;
  o.tol = tol;
  o.max_iter = max_iter;
  o.restarts = restarts;
  o.seed = seed;
  return o;
}

FamilyRange family_from(const std::string& name, double lo, double hi, double mu) {
  FamilyRange f{Family::Gamma, lo, hi, mu};
  if (name == "ep") f.family = Family::ExpPower;
  else if (name == "mix") f.family = Family::GaussMixture;
  else if (name != "gamma") throw Error(ErrorKind::InvalidSpec, "family must be gamma, ep or mix");
  return f;
}

}  // namespace

PYBIND11_MODULE(_cumica, m) {
  m.doc() = "Independent component analysis with third and fourth cumulants";

  // Messages start with the error kind, e.g. "ZeroDenominator: ...".
  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<MomentProfile>(m, "MomentProfile")
      .def_readonly("gamma", &MomentProfile::gamma)
      .def_readonly("beta", &MomentProfile::beta)
      .def_readonly("kappa", &MomentProfile::kappa)
      .def_readonly("nu", &MomentProfile::nu)
      .def_readonly("omega", &MomentProfile::omega)
      .def_readonly("eta", &MomentProfile::eta)
      .def("__repr__", [](const MomentProfile& c) {
        return "MomentProfile(gamma=" + std::to_string(c.gamma) + ", kappa=" + std::to_string(c.kappa) + ")";
      });

  m.def("moment_profile", [](const std::string& source) { return moment_profile(parse_source(source)); },
        py::arg("source"), "Exact moment profile of a source such as 'gamma:2' or 'mix:0.3:5'.");

  m.def(
      "sample_source",
      [](const std::string& source, std::size_t n, std::uint64_t seed) {
        RngStream rng(seed);
        return sample_source(parse_source(source), n, rng);
      },
      py::arg("source"), py::arg("n"), py::arg("seed") = 0);

  py::class_<UnmixingEstimate>(m, "UnmixingEstimate")
      .def_readonly("w", &UnmixingEstimate::w)
      .def_readonly("alpha", &UnmixingEstimate::alpha)
      .def_readonly("iterations", &UnmixingEstimate::iterations)
      .def_readonly("converged", &UnmixingEstimate::converged)
      .def_readonly("objective", &UnmixingEstimate::objective)
      .def_readonly("objective_trace", &UnmixingEstimate::objective_trace)
      .def_property_readonly("method", [](const UnmixingEstimate& e) { return std::string(to_string(e.method)); })
      .def_property_readonly("warnings", [](const UnmixingEstimate& e) {
        std::vector<std::string> out;
        for (auto w : e.warnings) out.emplace_back(to_string(w));
        return out;
      });

  m.def(
      "estimate",
      [](const Matrix& x, const std::string& method, double alpha, const std::string& standardizer, double tol,
         int max_iter, int restarts, std::uint64_t seed) {
        const SolverOptions o = solver_options(tol, max_iter, restarts, seed);
        if (method == "fobi") return fobi(x);
        const Method mt = parse_method(method);
        if (mt == Method::CompoundCumulant) {
          std::optional<Standardizer> st;
          if (standardizer == "fobi") st = Standardizer::fobi();
          else if (standardizer == "symmetric") st = Standardizer::symmetric_pp(alpha);
          else if (!standardizer.empty()) throw Error(ErrorKind::InvalidArgument, "unknown standardizer");
          return compound_cumulant(x, alpha, st, o);
        }
        if (!standardizer.empty())
          throw Error(ErrorKind::InvalidArgument, "standardizer only applies to the compound method");
        return estimate(mt, x, alpha, o);
      },
      py::arg("x"), py::arg("method") = "symmetric", py::arg("alpha") = 0.8, py::arg("standardizer") = "",
      py::arg("tol") = 1e-9, py::arg("max_iter") = 500, py::arg("restarts") = 10, py::arg("seed") = 0,
      "Unmixing matrix estimate; observations in rows. Methods: deflation, symmetric, compound, jade, fobi.");

  m.def("projection_index", &projection_index, py::arg("y"), py::arg("alpha"));

  m.def(
      "asv_table",
      [](const std::string& method, const std::vector<std::string>& sources, double alpha) {
        const AsvTable t = population_asv(parse_method(method), profiles_from(sources), alpha);
        return py::make_tuple(t.diag, t.offdiag);
      },
      py::arg("method"), py::arg("sources"), py::arg("alpha"),
      "(diag, offdiag) asymptotic variances for sources in the given order.");

  m.def(
      "offdiag_criterion",
      [](const std::string& method, const std::vector<std::string>& sources, double alpha, int k, int l) {
        return offdiag_criterion(population_asv(parse_method(method), profiles_from(sources), alpha), k, l);
      },
      py::arg("method"), py::arg("sources"), py::arg("alpha"), py::arg("k") = 0, py::arg("l") = 1);

  m.def("jade_weight_map", &jade_weight_map, py::arg("alpha_j"));
  m.def("cluster_objective", &cluster_objective, py::arg("alpha"), py::arg("pi"), py::arg("mu"));
  m.def(
      "optimal_alpha",
      [](double pi, double mu, double grid_tol) {
        const OptimalAlpha r = optimal_alpha(pi, mu, grid_tol);
        return py::make_tuple(r.alpha_star, r.f_star);
      },
      py::arg("pi"), py::arg("mu"), py::arg("grid_tol") = 1e-3);

  m.def("mdi", &mdi, py::arg("w"), py::arg("omega"));

  m.def(
      "generate_ic_sample",
      [](const std::vector<std::string>& sources, std::size_t n, std::uint64_t seed, const std::string& mixing,
         std::optional<Matrix> omega) {
        IcModelSpec spec;
        spec.sources = specs_from(sources);
        if (omega) {
          spec.mixing = IcModelSpec::Mixing::Given;
          spec.omega = *omega;
        } else if (mixing == "random") {
          spec.mixing = IcModelSpec::Mixing::RandomFullRank;
          spec.mixing_seed = seed;
        } else if (mixing != "identity") {
          throw Error(ErrorKind::InvalidArgument, "mixing must be identity or random");
        }
        RngStream rng(seed);
        const IcSample s = generate_ic_sample(spec, n, rng);
        return py::make_tuple(s.x, s.omega, s.z);
      },
      py::arg("sources"), py::arg("n"), py::arg("seed") = 0, py::arg("mixing") = "identity",
      py::arg("omega") = py::none(), "(X, Omega, Z) from the model x = Omega z.");

  m.def(
      "monte_carlo",
      [](const std::vector<std::string>& sources, const std::string& method, double alpha, std::size_t n, int reps,
         std::uint64_t seed, int restarts, int threads) {
        IcModelSpec model;
        model.sources = specs_from(sources);
        McOptions opt;
        opt.solver.restarts = restarts;
        opt.threads = threads;
        McResult r;
        {
          py::gil_scoped_release release;
          r = monte_carlo_experiment(model, parse_method(method), alpha, n, reps, seed, opt);
        }
        py::dict d;
        d["n_var"] = r.n_var;
        d["asv"] = r.asv;
        d["failed"] = r.failed;
        d["mdi_mean"] = r.mdi_mean;
        d["mdi_median"] = r.mdi_median;
        d["wall_seconds"] = r.wall_seconds;
        return d;
      },
      py::arg("sources"), py::arg("method"), py::arg("alpha"), py::arg("n"), py::arg("reps"), py::arg("seed") = 0,
      py::arg("restarts") = 10, py::arg("threads") = 0);

  m.def(
      "contour_grid",
      [](const std::string& family_x, std::pair<double, double> range_x, const std::string& family_y,
         std::pair<double, double> range_y, const std::string& method, double alpha, int steps, double mu_x,
         double mu_y) {
        const ContourGrid g =
            contour_grid(family_from(family_x, range_x.first, range_x.second, mu_x),
                         family_from(family_y, range_y.first, range_y.second, mu_y), parse_method(method), alpha, steps);
        return py::make_tuple(g.xs, g.ys, g.values);
      },
      py::arg("family_x"), py::arg("range_x"), py::arg("family_y"), py::arg("range_y"), py::arg("method"),
      py::arg("alpha"), py::arg("steps") = 50, py::arg("mu_x") = 0.0, py::arg("mu_y") = 0.0,
      "(xs, ys, values) of ASV(w12) + ASV(w21); +inf at poles, NaN for invalid cells.");

  m.def(
      "check_assumptions",
      [](const std::vector<std::string>& sources, const std::string& method, double alpha) {
        const auto prof = profiles_from(sources);
        const AssumptionReport r = check_assumptions(prof, parse_method(method), alpha);
        py::dict d;
        d["required"] = r.required;
        d["holds"] = r.holds;
        d["component"] = r.component;
        d["message"] = r.message;
        return d;
      },
      py::arg("sources"), py::arg("method"), py::arg("alpha"));
}
