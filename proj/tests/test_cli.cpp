#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cumica/cli.hpp"
#include "cumica/csv.hpp"
#include "cumica/estimators.hpp"
#include "cumica/simulation.hpp"
#include "support.hpp"

using namespace cumica;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

CsvTable parse(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "cumica_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

Matrix omega_from_comments(const CsvTable& t) {
  std::vector<std::vector<double>> rows;
  for (const auto& c : t.comments) {
    const auto pos = c.find("omega=");
    if (pos == std::string::npos) continue;
    std::stringstream ss(c.substr(pos + 6));
    std::string item;
    rows.emplace_back();
    while (std::getline(ss, item, ',')) rows.back().push_back(parse_number(item));
  }
  Matrix m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  return m;
}

}  // namespace

TEST_CASE("asv table for two exponential sources") {
  const Outcome o = run_cli({"asv", "--method", "symmetric", "--alpha", "1.0", "--sources", "gamma:1,gamma:1"});
  REQUIRE(o.code == 0);
  CHECK(o.out.rfind("# cumica asv method=symmetric alpha=1", 0) == 0);
  const CsvTable t = parse(o.out);
  REQUIRE(t.header == std::vector<std::string>{"k", "l", "asv"});
  REQUIRE(t.data.rows() == 4);
  CHECK(t.data(1, 2) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(t.data(2, 2) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(t.data(0, 2) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("optimal alpha at the symmetric mixture") {
  const Outcome o = run_cli({"optimal-alpha", "--pi", "0.5", "--mu", "5"});
  REQUIRE(o.code == 0);
  const CsvTable t = parse(o.out);
  REQUIRE(t.data.rows() == 1);
  CHECK(t.data(0, 2) == 0.0);
  const Outcome many = run_cli({"optimal-alpha", "--pi", "0.1,0.3", "--mu", "2,5,10"});
  CHECK(parse(many.out).data.rows() == 6);
}

TEST_CASE("emitted data round-trips through estimate") {
  const fs::path data = scratch("jade.csv");
  const Outcome sim = run_cli({"simulate", "--sources", "gamma:1,gamma:2,gamma:4", "--n", "3000", "--seed", "21",
                               "--mixing", "random", "--emit-data", "--out", data.string()});
  REQUIRE(sim.code == 0);
  const CsvTable emitted = read_csv_file(data.string());
  const Matrix omega = omega_from_comments(emitted);
  REQUIRE(omega.rows() == 3);

  const Outcome est = run_cli({"estimate", "--in", data.string(), "--method", "jade", "--alpha", "0"});
  REQUIRE(est.code == 0);
  CHECK(est.out.find("method=jade alpha=0 seed=0") != std::string::npos);
  const Matrix w = parse(est.out).data;
  CHECK(mdi(w, omega) < 0.1);

  IcModelSpec model;
  model.sources = parse_source_list("gamma:1,gamma:2,gamma:4");
  model.mixing = IcModelSpec::Mixing::RandomFullRank;
  model.mixing_seed = 21;
  RngStream rng(21);
  const IcSample s = generate_ic_sample(model, 3000, rng);
  CHECK(s.x == emitted.data);
  CHECK(s.omega == omega);
  CHECK(all_cumulant(s.x, 0.0).w == w);

  const Outcome again = run_cli({"estimate", "--in", data.string(), "--method", "jade", "--alpha", "0"});
  CHECK(again.out == est.out);
}

TEST_CASE("fobi alias") {
  const fs::path data = scratch("fobi.csv");
  REQUIRE(run_cli({"simulate", "--sources", "gamma:1,uniform,ep:1", "--n", "2000", "--seed", "3", "--mixing",
                   "random", "--emit-data", "--out", data.string()})
              .code == 0);
  const Outcome est = run_cli({"estimate", "--in", data.string(), "--method", "fobi"});
  REQUIRE(est.code == 0);
  const Matrix x = read_csv_file(data.string()).data;
  CHECK(parse(est.out).data == compound_cumulant(x, 0.0, Standardizer::fobi()).w);
  CHECK(cumica::testing::signed_permutation_distance(parse(est.out).data, fobi(x).w) < 1e-8);
}

TEST_CASE("simulate prints a result table") {
  const Outcome o = run_cli({"simulate", "--sources", "gamma:1,gamma:4", "--alpha", "1", "--n", "1000", "--reps",
                             "20", "--seed", "5", "--restarts", "1", "--threads", "2"});
  REQUIRE(o.code == 0);
  CHECK(o.out.find("\nmethod,alpha,n,reps,k,l,n_var,asv,rel_err\n") != std::string::npos);
  CHECK(o.out.find("symmetric,1,1000,20,1,2,") != std::string::npos);
}

TEST_CASE("contour output") {
  const Outcome o = run_cli({"contour", "--family-x", "gamma", "--range-x", "1:5", "--family-y", "gamma",
                             "--range-y", "1:5", "--method", "symmetric", "--alpha", "1", "--steps", "3"});
  REQUIRE(o.code == 0);
  CHECK(o.out.find("symmetric,1,1,1,1.5\n") != std::string::npos);
  const Outcome c = run_cli({"contour", "--family-x", "gamma", "--range-x", "1:5", "--family-y", "gamma",
                             "--range-y", "1:5", "--method", "compound", "--alpha", "0", "--steps", "3"});
  CHECK(c.out.find("compound,0,1,1,inf\n") != std::string::npos);
}

TEST_CASE("assumption check command") {
  const Outcome ok = run_cli({"check-assumptions", "--sources", "gamma:1,gamma:2", "--method", "symmetric"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("7,1,0") != std::string::npos);
  const Outcome bad =
      run_cli({"check-assumptions", "--sources", "uniform,uniform", "--method", "symmetric", "--alpha", "1"});
  CHECK(bad.code == 2);
  CHECK(bad.out.find("3,0,2") != std::string::npos);
  CHECK(bad.err.find("AssumptionViolated") != std::string::npos);
  CHECK(bad.err.find("(component 2)") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"bogus"}).code == 1);
  CHECK(run_cli({"asv", "--method", "kica", "--sources", "gamma:1"}).code == 1);
  CHECK(run_cli({"asv", "--alpha", "2", "--sources", "gamma:1,gamma:2"}).code == 1);
  const Outcome spec = run_cli({"asv", "--sources", "gamma:1,cauchy"});
  CHECK(spec.code == 1);
  CHECK(spec.err.find("InvalidSpec") != std::string::npos);
  CHECK(spec.err.find("Usage") != std::string::npos);
  const Outcome zero = run_cli({"asv", "--method", "symmetric", "--alpha", "0", "--sources", "normal,normal"});
  CHECK(zero.code == 2);
  CHECK(zero.err.find("ZeroDenominator") != std::string::npos);
  CHECK(run_cli({"estimate", "--in", "/nonexistent/file.csv"}).code == 1);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("options from a config file") {
  const fs::path cfg = scratch("asv.ini");
  {
    std::ofstream f(cfg);
    f << "[asv]\nmethod = \"deflation\"\nalpha = 1\nsources = \"gamma:1,gamma:1\"\n";
  }
  const Outcome o = run_cli({"--config", cfg.string(), "asv"});
  REQUIRE(o.code == 0);
  const CsvTable t = parse(o.out);
  CHECK(t.data(1, 2) + t.data(2, 2) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("output file") {
  const fs::path path = scratch("asv.csv");
  REQUIRE(run_cli({"asv", "--sources", "gamma:1,gamma:2", "--out", path.string()}).code == 0);
  CHECK(read_csv_file(path.string()).data.rows() == 4);
}
