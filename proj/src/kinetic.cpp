#include "fraclimit/kinetic.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fraclimit {

struct KineticSolver::Factorization {
  double h = 0.0;
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> lu;
};

KineticSolver::KineticSolver(VelocitySpace space, int n_x, double epsilon)
    : space_(std::move(space)), grid_(n_x), epsilon_(epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("KineticSolver: epsilon must lie in (0, 1]");
  }
}

KineticSolver::KineticSolver(VelocitySpace space, int n_x, double epsilon, CollisionModel model)
    : KineticSolver(std::move(space), n_x, epsilon) {
  if (space_.quadrature().dim() != 1) {
    throw std::invalid_argument("KineticSolver: general operator needs N = 1");
  }
  model_.emplace(std::move(model));
}

KineticSolver::~KineticSolver() = default;
KineticSolver::KineticSolver(KineticSolver&&) noexcept = default;
KineticSolver& KineticSolver::operator=(KineticSolver&&) noexcept = default;

PhaseSpaceState KineticSolver::init_state(const DensityField& rho0) const {
  if (rho0.size() != grid_.size()) {
    throw std::invalid_argument("init_state: rho0 lives on a different grid");
  }
  const Eigen::Index bad = [&] {
    for (Eigen::Index i = 0; i < rho0.size(); ++i) {
      if (rho0(static_cast<int>(i)) < 0.0) return i;
    }
    return Eigen::Index(-1);
  }();
  if (bad >= 0) {
    std::ostringstream os;
    os << "init_state: negative initial density " << rho0(static_cast<int>(bad)) << " at x = "
       << grid_.point(static_cast<int>(bad));
    throw std::invalid_argument(os.str());
  }
  Eigen::VectorXcd rho_hat = rho0.spectrum();
  if (grid_.size() % 2 == 0) rho_hat(grid_.size() / 2) = 0.0;
  PhaseSpaceState state;
  state.epsilon = epsilon_;
  state.alpha = alpha();
  state.coeffs = rho_hat * space_.equilibrium().cast<std::complex<double>>().transpose();
  return state;
}

std::complex<double> KineticSolver::transport_phase(int k, double v, double tau) const {
  const double speed = std::pow(epsilon_, 1.0 - alpha());
  return std::polar(1.0, -static_cast<double>(k) * v * speed * tau);
}

void KineticSolver::transport(PhaseSpaceState& state, double tau) const {
  const Eigen::VectorXd& v = space_.speeds();
  const double speed = std::pow(epsilon_, 1.0 - alpha());
  for (int slot = 0; slot < grid_.size(); ++slot) {
    if (grid_.is_nyquist(slot)) {
      state.coeffs.row(slot).setZero();
      continue;
    }
    const double k = grid_.wavenumber(slot);
    if (k == 0.0) continue;
    for (Eigen::Index j = 0; j < space_.size(); ++j) {
      state.coeffs(slot, j) *= std::polar(1.0, -k * v(j) * speed * tau);
    }
  }
}

const KineticSolver::Factorization& KineticSolver::factorization(double h) const {
  if (cache_ && cache_->h == h) return *cache_;
  auto fac = std::make_unique<Factorization>();
  fac->h = h;
  fac->lu.reserve(grid_.size());
  for (int i = 0; i < grid_.size(); ++i) {
    Eigen::MatrixXd A = -h * collision_matrix(*model_, space_, grid_.point(i));
    A.diagonal().array() += 1.0;
    fac->lu.emplace_back(A);
  }
  cache_ = std::move(fac);
  return *cache_;
}

void KineticSolver::collide(PhaseSpaceState& state, double dt) const {
  const double h = dt / std::pow(epsilon_, alpha());
  if (!model_) {
    const Eigen::VectorXcd rho = state.coeffs * space_.weights().cast<std::complex<double>>();
    const Eigen::MatrixXcd eq = rho * space_.equilibrium().cast<std::complex<double>>().transpose();
    state.coeffs = eq + (state.coeffs - eq) * std::exp(-h);
    return;
  }
  const Factorization& fac = factorization(h);
  const int n_x = grid_.size();
  const Eigen::Index n_v = space_.size();
  Eigen::MatrixXd phys(n_x, n_v);
  for (Eigen::Index j = 0; j < n_v; ++j) phys.col(j) = from_spectrum(state.coeffs.col(j)).real();
  for (int i = 0; i < n_x; ++i) {
    phys.row(i) = fac.lu[i].solve(phys.row(i).transpose()).transpose();
  }
  for (Eigen::Index j = 0; j < n_v; ++j) {
    state.coeffs.col(j) = to_spectrum(Eigen::VectorXd(phys.col(j)));
  }
  if (n_x % 2 == 0) state.coeffs.row(n_x / 2).setZero();
}

void KineticSolver::step(PhaseSpaceState& state, double dt) const {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  transport(state, 0.5 * dt);
  collide(state, dt);
  transport(state, 0.5 * dt);
  state.time += dt;
}

double KineticSolver::mass(const PhaseSpaceState& state) const {
  return kTwoPi * (state.coeffs.row(0) * space_.weights().cast<std::complex<double>>())(0).real();
}

Decomposition KineticSolver::decompose(const PhaseSpaceState& state) const {
  const Eigen::VectorXcd rho_hat = state.coeffs * space_.weights().cast<std::complex<double>>();
  const Eigen::VectorXd& F = space_.equilibrium();
  const Eigen::VectorXd& w = space_.weights();
  double f_sq = 0.0, g_sq = 0.0;
  for (Eigen::Index s = 0; s < state.coeffs.rows(); ++s) {
    for (Eigen::Index j = 0; j < state.coeffs.cols(); ++j) {
      const std::complex<double> f = state.coeffs(s, j);
      f_sq += w(j) * std::norm(f) / F(j);
      g_sq += w(j) * std::norm(f - rho_hat(s) * F(j)) / F(j);
    }
  }
  Decomposition d;
  d.rho = DensityField::from_spectrum(rho_hat);
  d.f_norm = std::sqrt(kTwoPi * f_sq);
  d.g_norm_squared = kTwoPi * g_sq;
  return d;
}

KineticRun KineticSolver::solve(PhaseSpaceState state, double T, double dt,
                                const std::vector<double>& snapshot_times) const {
  if (!(T > 0.0) || !(dt > 0.0)) throw std::invalid_argument("solve: T and dt must be positive");
  const int steps = std::max(1, static_cast<int>(std::ceil(T / dt - 1e-9)));
  dt = T / steps;

  KineticRun run;
  run.steps = steps;
  run.dt = dt;
  std::vector<int> snap_steps;
  for (double t : snapshot_times) {
    snap_steps.push_back(static_cast<int>(std::lround(std::clamp(t, 0.0, T) / dt)));
  }
  auto maybe_snapshot = [&](int n, const Decomposition& d) {
    for (int s : snap_steps) {
      if (s == n) {
        run.snapshots.push_back({state.time, d.rho});
        break;
      }
    }
  };

  Decomposition d = decompose(state);
  run.f0_norm = d.f_norm;
  double g_integral = 0.0;
  double g_prev = d.g_norm_squared;
  run.monitors.push_back({state.time, mass(state), d.f_norm, 0.0, d.rho.l2_norm()});
  maybe_snapshot(0, d);

  for (int n = 1; n <= steps; ++n) {
    step(state, dt);
    d = decompose(state);
    g_integral += 0.5 * dt * (g_prev + d.g_norm_squared);
    g_prev = d.g_norm_squared;
    if (!std::isfinite(d.f_norm) || d.f_norm > run.f0_norm * (1.0 + 1e-8) + 1e-300) {
      std::ostringstream os;
      os << "solve: L2_{F^-1} norm grew from " << run.f0_norm << " to " << d.f_norm << " at step "
         << n << " (t = " << state.time << ")";
      throw std::runtime_error(os.str());
    }
    run.monitors.push_back({state.time, mass(state), d.f_norm, std::sqrt(g_integral), d.rho.l2_norm()});
    maybe_snapshot(n, d);
  }
  run.final_state = std::move(state);
  return run;
}

}  // namespace fraclimit
