#include "fraclimit/harness/acceptance.hpp"
#include "fraclimit/harness/config.hpp"
#include "fraclimit/harness/experiments.hpp"
#include "fraclimit/harness/regression.hpp"
#include "fraclimit/harness/report.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace fraclimit;
using namespace fraclimit::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("fraclimit_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ExperimentConfig golden_config() { return load_config(fs::path(FRACLIMIT_GOLDEN_DIR) / "leps_small.json"); }

}  // namespace

TEST_CASE("empirical order recovers synthetic slopes") {
  const std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
  for (double p : {0.5, 1.0, 2.0}) {
    std::vector<double> err;
    for (double e : eps) err.push_back(3.0 * std::pow(e, p));
    const OrderFit fit = empirical_order(err, eps);
    CHECK(fit.slope == doctest::Approx(p).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(fit.residual < 1e-12);
    CHECK(fit.used == 4);
  }
  const OrderFit fit = empirical_order({0.4, 0.0, 0.1, 0.05}, eps);
  CHECK(fit.excluded == std::vector<std::size_t>{1});
  CHECK(fit.used == 3);
  CHECK_THROWS_AS(empirical_order({1.0, 0.5}, {0.2, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(empirical_order({1.0, 0.5, 0.2}, {0.2, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(empirical_order({0.0, 0.0, 0.2}, {0.2, 0.1, 0.05}), std::invalid_argument);
  CHECK_THROWS_AS(empirical_order({1.0, 0.5, 0.2}, {0.2, 0.0, 0.05}), std::invalid_argument);
}

TEST_CASE("strictly decreasing") {
  CHECK(strictly_decreasing({3.0, 2.0, 1.0}));
  CHECK_FALSE(strictly_decreasing({3.0, 3.0, 1.0}));
  CHECK(strictly_decreasing({}));
}

TEST_CASE("config defaults, round trip and validation") {
  for (const auto& id : experiment_ids()) {
    const ExperimentConfig cfg = default_config(id);
    CHECK_NOTHROW(validate(cfg));
    const ExperimentConfig back = config_from_json(config_to_json(cfg));
    CHECK(config_to_json(back) == config_to_json(cfg));
  }
  CHECK(list_experiments().size() == experiment_ids().size());
  CHECK(default_config("operator_consistency").family == TailFamily::generalized_cauchy);
  CHECK(default_config("hydro_limit_thm1").collision.profile == CollisionProfile::uniform);

  const auto bad = [](const std::string& text) { return config_from_json(nlohmann::json::parse(text)); };
  CHECK_THROWS_WITH_AS(bad(R"({"experiment": "nope"})"), doctest::Contains("unknown experiment"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(bad(R"({"alpha": 2.5})"), doctest::Contains("alpha"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(bad(R"({"epsilons": [0.1, 0.2, 0.05]})"), doctest::Contains("decreasing"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(bad(R"({"velocity": {"n_nodes": 7}})"), doctest::Contains("n_nodes"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(bad(R"({"space": {"n_x": "many"}})"), doctest::Contains("n_x"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(bad(R"({"initial_density": {"amplitude": 2.0}})"), doctest::Contains("nonnegative"), std::invalid_argument);
  CHECK_THROWS_AS(bad("[1, 2]"), std::invalid_argument);

  const fs::path dir = scratch_dir("config");
  std::ofstream(dir / "c.json") << "// comment\n{\"experiment\": \"apriori_estimates\", \"alpha\": 0.8}\n";
  const ExperimentConfig cfg = load_config(dir / "c.json");
  CHECK(cfg.experiment == "apriori_estimates");
  CHECK(cfg.alpha == 0.8);
  std::ofstream(dir / "broken.json") << "{\"alpha\": ";
  CHECK_THROWS_WITH_AS(load_config(dir / "broken.json"), doctest::Contains("broken.json"), std::runtime_error);
  CHECK_THROWS_AS(load_config(dir / "absent.json"), std::runtime_error);
}

TEST_CASE("time step rule") {
  ExperimentConfig cfg;
  cfg.alpha = 1.5;
  CHECK(time_step(cfg, 0.2) == doctest::Approx(0.01));
  CHECK(time_step(cfg, 0.025) == doctest::Approx(std::pow(0.025, 1.5)));
}

TEST_CASE("invariant checker") {
  KineticRun run;
  run.f0_norm = 2.0;
  run.monitors = {{0.0, 1.0, 2.0, 0.0, 1.5}, {0.1, 1.0, 1.9, 0.1, 1.4}, {0.2, 1.0, 1.8, 0.2, 1.3}};
  InvariantReport r = check_invariants(run, 1e-12);
  CHECK(r.first_violation_step == -1);
  CHECK(r.max_f_norm_increase == doctest::Approx(-0.05));
  CHECK(r.max_rho_over_f0 == doctest::Approx(0.75));
  run.monitors[2].mass = 1.0 + 1e-9;
  r = check_invariants(run, 1e-12);
  CHECK(r.first_violation_step == 2);
  CHECK(r.max_mass_drift == doctest::Approx(1e-9).epsilon(1e-6));
  run.monitors[2].mass = 1.0;
  run.monitors[1].f_norm = 2.1;
  CHECK(check_invariants(run, 1e-12).first_violation_step == 1);
}

TEST_CASE("CSV and summary emission") {
  ExperimentResult r;
  r.experiment = "operator_consistency";
  r.config = {{"alpha", 1.0}};
  Table t{schema::convergence, {}};
  t.add({0.1, 1.0, 0.25, 1.0 / 3.0});
  t.add({0.05, 2.0, 1e-17, 123456789.125});
  CHECK_THROWS_AS(t.add({1.0}), std::invalid_argument);
  r.tables["convergence"] = t;
  r.criteria.push_back({2, "x", true, "ok"});
  r.metrics["slope"] = 1.0;
  const fs::path dir = scratch_dir("report") / "nested";
  emit_report(r, dir);
  const Table back = read_csv(dir / "convergence.csv");
  CHECK(back.columns == schema::convergence);
  REQUIRE(back.rows.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t c = 0; c < 4; ++c) CHECK(back.rows[i][c] == doctest::Approx(t.rows[i][c]).epsilon(1e-12));
  }
  CHECK(back.column("k") == std::vector<double>{1.0, 2.0});
  CHECK_THROWS_AS(back.column("missing"), std::out_of_range);
  std::ifstream in(dir / "summary.json");
  const nlohmann::json s = nlohmann::json::parse(in);
  CHECK(s.at("passed") == true);
  CHECK(s.at("criteria").at(0).at("id") == 2);
  CHECK(s.at("tables").at(0) == "convergence.csv");
  CHECK(s.at("metrics").at("slope") == 1.0);
  std::ifstream head(dir / "convergence.csv");
  std::string line;
  std::getline(head, line);
  CHECK(line == "epsilon,k,sup_error,l2_error");
  CHECK_THROWS_WITH_AS(write_csv(t, dir / "no" / "such" / "dir.csv"), doctest::Contains("dir.csv"), std::runtime_error);
}

TEST_CASE("small run reproduces the golden table and is deterministic") {
  ExperimentConfig cfg = golden_config();
  const ExperimentResult a = run_experiment(cfg);
  const Table golden = read_csv(fs::path(FRACLIMIT_GOLDEN_DIR) / "leps_small_convergence.csv");
  const Table& got = a.tables.at("convergence");
  CHECK(got.columns == golden.columns);
  REQUIRE(got.rows.size() == golden.rows.size());
  for (std::size_t i = 0; i < got.rows.size(); ++i) {
    for (std::size_t c = 0; c < got.columns.size(); ++c) {
      CHECK(got.rows[i][c] == doctest::Approx(golden.rows[i][c]).epsilon(1e-9));
    }
  }
  cfg.parallel = true;
  const ExperimentResult b = run_experiment(cfg);
  nlohmann::json sa = summary_json(a), sb = summary_json(b);
  sa.erase("runtime_seconds");
  sb.erase("runtime_seconds");
  sa["config"].erase("parallel");
  sb["config"].erase("parallel");
  CHECK(sa == sb);
}

TEST_CASE("hydro run emits the plotting tables") {
  ExperimentConfig cfg = default_config("hydro_limit_thm1");
  cfg.epsilons = {0.4, 0.3, 0.2};
  cfg.n_x = 8;
  cfg.operator_n_x = 8;
  cfg.n_v = 16;
  cfg.T = 0.1;
  cfg.snapshots = {0.0, 0.1};
  const ExperimentResult r = run_experiment(cfg);
  for (const std::string name : {"hydro", "modes_eps0.4", "monitors_eps0.3", "snapshots_eps0.2"}) {
    CHECK(r.tables.count(name) == 1);
  }
  CHECK(r.tables.at("hydro").columns == schema::hydro);
  CHECK(r.tables.at("snapshots_eps0.2").rows.size() == 2 * 8);
  CHECK(r.tables.at("modes_eps0.4").columns == schema::modes);
  CHECK(r.tables.at("monitors_eps0.3").rows.size() == 11);
  CHECK(r.criteria.size() == 2);
}

TEST_CASE("unknown experiments are rejected") {
  ExperimentConfig cfg;
  cfg.experiment = "nothing";
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("noisy first-order data") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> noise(-0.01, 0.01);
  const std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> err;
    for (double e : eps) err.push_back(e * (1.0 + noise(rng)));
    const double slope = empirical_order(err, eps).slope;
    CHECK(slope >= 0.9);
    CHECK(slope <= 1.1);
  }
}

namespace {

ExperimentConfig tiny(const std::string& id) {
  ExperimentConfig cfg = default_config(id);
  cfg.epsilons = {0.4, 0.2, 0.1};
  cfg.n_x = 8;
  cfg.operator_n_x = 32;
  cfg.n_v = 32;
  cfg.T = 0.2;
  cfg.snapshots = {0.0, 0.2};
  cfg.parallel = false;
  return cfg;
}

}  // namespace

TEST_CASE("constant data gives exact cases") {
  ExperimentConfig leps = tiny("leps_convergence_thm1");
  leps.wavenumbers = {0};
  const ExperimentResult a = run_experiment(leps);
  for (double e : a.tables.at("convergence").column("sup_error")) CHECK(e < 1e-12);

  ExperimentConfig hydro = tiny("hydro_limit_thm2");
  hydro.rho_amplitude = 0.0;
  const ExperimentResult h = run_experiment(hydro);
  for (double e : h.tables.at("hydro").column("l2_error")) CHECK(e < 1e-12);
  CHECK(h.metrics.at("slope") == "exact");

  ExperimentConfig apr = tiny("apriori_estimates");
  apr.rho_amplitude = 0.0;
  const ExperimentResult p = run_experiment(apr);
  CHECK(p.metrics.at("g_slope").at("simple") == "exact equilibrium");
  CHECK(p.metrics.at("g_slope").at("general") == "exact equilibrium");
  CHECK(p.passed());
}

TEST_CASE("hydrodynamic runs conserve the limit mass") {
  for (const char* id : {"hydro_limit_thm1", "hydro_limit_thm2"}) {
    const ExperimentResult r = run_experiment(tiny(id));
    CHECK(r.metrics.at("mass_gap_vs_limit").get<double>() < 1e-10);
  }
}

TEST_CASE("uniform collision in the space-dependent form tracks the constant-coefficient table") {
  ExperimentConfig one = tiny("leps_convergence_thm1");
  one.operator_n_x = 256;
  one.wavenumbers = {1};
  ExperimentConfig two = one;
  two.experiment = "leps_convergence_thm2";
  two.collision = CollisionParams{};
  const auto a = run_experiment(one).tables.at("convergence").column("sup_error");
  const auto b = run_experiment(two).tables.at("convergence").column("sup_error");
  REQUIRE(a.size() == b.size());
  // the two limits differ only by the principal-value quadrature error of the assembled operator
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-4);
}

TEST_CASE("empty tables and summary round trip") {
  ExperimentResult r;
  r.experiment = "apriori_estimates";
  r.tables["apriori"] = Table{schema::apriori, {}};
  const fs::path dir = scratch_dir("empty");
  emit_report(r, dir);
  const Table t = read_csv(dir / "apriori.csv");
  CHECK(t.columns == schema::apriori);
  CHECK(t.rows.empty());
  std::ifstream in(dir / "summary.json");
  CHECK(nlohmann::json::parse(in) == summary_json(r));
}

TEST_CASE("config echo reproduces the run") {
  const ExperimentResult a = run_experiment(golden_config());
  const ExperimentResult b = run_experiment(config_from_json(a.config));
  CHECK(a.tables.at("convergence").rows == b.tables.at("convergence").rows);
}
