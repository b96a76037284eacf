#include "fraclimit/kinetic.hpp"

#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>

using namespace fraclimit;
using cd = std::complex<double>;

namespace {

VelocitySpace space_for(double alpha, int n = 32) {
  const EquilibriumSpec F = make_exact_tail_family(alpha);
  return VelocitySpace(F, build_velocity_quadrature(F, n));
}

DensityField bump(int n) {
  return DensityField::from_function(n, [](double x) { return 1.0 + 0.5 * std::cos(x) + 0.2 * std::sin(2 * x); });
}

// Exact propagator of mode k for the simple operator:
// d_t f = (-i k v eps^{1-alpha} + eps^{-alpha} (F w^T - I)) f.
Eigen::MatrixXcd exact_mode_propagator(const VelocitySpace& s, int k, double eps, double t) {
  const double alpha = s.spec().alpha();
  const Eigen::Index n = s.size();
  Eigen::MatrixXcd G = (s.equilibrium() * s.weights().transpose()).cast<cd>() * std::pow(eps, -alpha);
  G.diagonal().array() -= std::pow(eps, -alpha);
  for (Eigen::Index j = 0; j < n; ++j) G(j, j) += cd(0.0, -k * s.speeds()(j) * std::pow(eps, 1.0 - alpha));
  return (G * t).exp();
}

}  // namespace

TEST_CASE("transport phase") {
  const KineticSolver solver(space_for(1.0), 8, 1.0);
  CHECK(std::abs(solver.transport_phase(1, 1.0, 0.1) - std::exp(cd(0.0, -0.1))) < 1e-15);
  const KineticSolver s2(space_for(0.5), 8, 0.25);
  // eps^{1 - alpha} = 0.5
  CHECK(std::abs(s2.transport_phase(2, 3.0, 0.1) - std::exp(cd(0.0, -0.3))) < 1e-15);
}

TEST_CASE("initial state and decomposition") {
  const KineticSolver solver(space_for(1.0), 16, 0.1);
  const DensityField rho0 = bump(16);
  const PhaseSpaceState st = solver.init_state(rho0);
  const Decomposition d = solver.decompose(st);
  CHECK((d.rho.values() - rho0.values()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(d.g_norm_squared < 1e-28);
  // ||rho F||_{F^-1}^2 = ||rho||^2 sum w F = ||rho||^2
  CHECK(d.f_norm == doctest::Approx(rho0.l2_norm()).epsilon(1e-13));
  CHECK(solver.mass(st) == doctest::Approx(rho0.mass()).epsilon(1e-14));
  const DensityField neg = DensityField::from_function(16, [](double x) { return std::cos(x); });
  CHECK_THROWS_AS(solver.init_state(neg), std::invalid_argument);
  CHECK_THROWS_AS(solver.init_state(bump(8)), std::invalid_argument);
  CHECK_THROWS_AS(KineticSolver(space_for(1.0), 16, 0.0), std::invalid_argument);
}

TEST_CASE("homogeneous relaxation matches the closed form") {
  const VelocitySpace s = space_for(1.0);
  const double eps = 0.5, dt = 0.07;
  const KineticSolver solver(s, 8, eps);
  PhaseSpaceState st = solver.init_state(DensityField(8, Eigen::VectorXd::Ones(8)));
  Eigen::VectorXd f0(s.size());
  for (Eigen::Index j = 0; j < f0.size(); ++j) f0(j) = s.equilibrium()(j) * (1.0 + 0.3 * std::cos(s.speeds()(j)));
  st.coeffs.row(0) = f0.cast<cd>().transpose();
  solver.collide(st, dt);
  const double rho = s.weights().dot(f0);
  const Eigen::VectorXd ref = rho * s.equilibrium() + std::exp(-dt / eps) * (f0 - rho * s.equilibrium());
  CHECK((st.coeffs.row(0).transpose().real() - ref).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("Strang splitting is second order against the exact mode propagator") {
  const VelocitySpace s = space_for(1.0, 24);
  const double eps = 0.5, T = 0.4;
  const int n_x = 8;
  const KineticSolver solver(s, n_x, eps);
  const DensityField rho0 = bump(n_x);
  const PhaseSpaceState st0 = solver.init_state(rho0);
  Eigen::MatrixXcd exact = st0.coeffs;
  for (int k : {1, 2}) {
    const PeriodicGrid g(n_x);
    exact.row(g.slot(k)) = (exact_mode_propagator(s, k, eps, T) * st0.coeffs.row(g.slot(k)).transpose()).transpose();
    exact.row(g.slot(-k)) = (exact_mode_propagator(s, -k, eps, T) * st0.coeffs.row(g.slot(-k)).transpose()).transpose();
  }
  std::vector<double> err;
  for (double dt : {0.04, 0.02, 0.01}) {
    const KineticRun run = solver.solve(st0, T, dt);
    err.push_back((run.final_state.coeffs - exact).cwiseAbs().maxCoeff());
  }
  CHECK(std::log2(err[0] / err[1]) >= 1.8);
  CHECK(std::log2(err[1] / err[2]) >= 1.8);
}

TEST_CASE("a priori invariants for both operators") {
  const VelocitySpace s = space_for(0.8);
  const DensityField rho0 = bump(16);
  const CollisionModel model({CollisionProfile::smooth_nu0, 0.5}, s.spec());
  for (int op = 0; op < 2; ++op) {
    const KineticSolver solver = op ? KineticSolver(s, 16, 0.1, model) : KineticSolver(s, 16, 0.1);
    const KineticRun run = solver.solve(solver.init_state(rho0), 0.3, 0.01, {0.0, 0.1, 0.3});
    CHECK(run.steps == 30);
    CHECK(run.snapshots.size() == 3);
    CHECK(run.snapshots[1].t == doctest::Approx(0.1));
    double prev = run.f0_norm;
    for (const auto& m : run.monitors) {
      CHECK(std::abs(m.mass - rho0.mass()) <= 1e-12 * rho0.mass());
      CHECK(m.f_norm <= prev * (1.0 + 1e-13));
      CHECK(m.rho_l2 <= run.f0_norm * (1.0 + 1e-13));
      prev = m.f_norm;
    }
    CHECK(run.monitors.back().g_norm_accum > 0.0);
  }
}

TEST_CASE("general operator with a uniform model approaches the simple operator") {
  const VelocitySpace s = space_for(1.0, 24);
  const DensityField rho0 = bump(8);
  const KineticSolver simple(s, 8, 0.5);
  const KineticSolver general(s, 8, 0.5, CollisionModel({}, s.spec()));
  std::vector<double> diff;
  for (double dt : {0.02, 0.01}) {
    const auto a = simple.solve(simple.init_state(rho0), 0.2, dt).final_state.coeffs;
    const auto b = general.solve(general.init_state(rho0), 0.2, dt).final_state.coeffs;
    diff.push_back((a - b).cwiseAbs().maxCoeff());
  }
  CHECK(diff[1] < diff[0]);
  CHECK(diff[1] < 1e-2);
}

TEST_CASE("solve argument checks") {
  const KineticSolver solver(space_for(1.0), 8, 0.5);
  const PhaseSpaceState st = solver.init_state(bump(8));
  CHECK_THROWS_AS(solver.solve(st, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(solver.solve(st, 1.0, -0.1), std::invalid_argument);
}

TEST_CASE("constant and cosine initial data") {
  const VelocitySpace s = space_for(1.0);
  const KineticSolver solver(s, 16, 0.1);
  const PhaseSpaceState one = solver.init_state(DensityField(16, Eigen::VectorXd::Ones(16)));
  CHECK(one.coeffs.bottomRows(15).cwiseAbs().maxCoeff() == 0.0);
  CHECK((one.coeffs.row(0).transpose().real() - s.equilibrium()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(solver.mass(one) == doctest::Approx(kTwoPi).epsilon(1e-14));

  const PhaseSpaceState cs = solver.init_state(DensityField::from_function(16, [](double x) { return 1.0 + 0.5 * std::cos(x); }));
  const PeriodicGrid g(16);
  for (int slot = 0; slot < 16; ++slot) {
    const bool expected = std::abs(g.wavenumber(slot)) <= 1;
    CHECK((cs.coeffs.row(slot).cwiseAbs().maxCoeff() > 1e-14) == expected);
  }
  CHECK(solver.mass(cs) == doctest::Approx(kTwoPi).epsilon(1e-14));

  PhaseSpaceState st = one;
  solver.step(st, 0.37);
  CHECK((st.coeffs - one.coeffs).cwiseAbs().maxCoeff() < 1e-15);
  const KineticRun run = solver.solve(one, 1.0, 0.05, {0.5, 1.0});
  for (const auto& snap : run.snapshots) CHECK((snap.rho.values().array() - 1.0).abs().maxCoeff() < 1e-14);
}

TEST_CASE("long collision sub-step projects onto the equilibrium") {
  const VelocitySpace s = space_for(1.0);
  const KineticSolver solver(s, 8, 0.5);
  PhaseSpaceState st = solver.init_state(bump(8));
  solver.transport(st, 0.3);
  const Eigen::VectorXcd rho = st.coeffs * s.weights().cast<cd>();
  solver.collide(st, 1e3);
  const Eigen::MatrixXcd proj = rho * s.equilibrium().cast<cd>().transpose();
  CHECK((st.coeffs - proj).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(std::abs(solver.transport_phase(1, 1.0, 0.1) - std::exp(cd(0.0, -0.1))) < 1e-15);
}

TEST_CASE("first mode follows the fractional decay at eps = 0.1") {
  const VelocitySpace s = space_for(1.0, 128);
  const KineticSolver solver(s, 16, 0.1);
  const DensityField rho0 = DensityField::from_function(16, [](double x) { return 1.0 + 0.5 * std::cos(x); });
  const KineticRun run = solver.solve(solver.init_state(rho0), 1.0, 0.01, {1.0});
  // kappa = kappa0 pi Gamma(2) for the exact-tail alpha = 1 member with c_{1,1} = 1/pi
  const double kappa = s.spec().kappa0() * std::numbers::pi;
  const double predicted = 0.25 * std::exp(-kappa);
  const double rel = std::abs(run.snapshots.back().rho.mode(1).real() - predicted) / predicted;
  MESSAGE("relative first-mode error at eps = 0.1: " << rel);
  CHECK(rel < 0.05);
  CHECK(std::abs(run.monitors.back().mass - run.monitors.front().mass) <= 1e-12 * run.monitors.front().mass);
}

TEST_CASE("g has zero velocity mean") {
  const VelocitySpace s = space_for(1.0);
  const KineticSolver solver(s, 8, 0.2);
  PhaseSpaceState st = solver.init_state(bump(8));
  solver.step(st, 0.05);
  const Eigen::VectorXcd rho = st.coeffs * s.weights().cast<cd>();
  const Eigen::MatrixXcd g = st.coeffs - rho * s.equilibrium().cast<cd>().transpose();
  CHECK((g * s.weights().cast<cd>()).cwiseAbs().maxCoeff() < 1e-12);
}
