#pragma once

#include "fraclimit/collision.hpp"
#include "fraclimit/periodic.hpp"

#include <Eigen/Dense>

#include <complex>
#include <memory>
#include <optional>
#include <vector>

namespace fraclimit {

/// f^eps as Fourier coefficients: coeffs(slot, j) = f_hat(k, v_j), slots ordered as in PeriodicGrid.
struct PhaseSpaceState {
  Eigen::MatrixXcd coeffs;
  double epsilon = 1.0;
  double alpha = 1.0;
  double time = 0.0;

  int n_x() const { return static_cast<int>(coeffs.rows()); }
};

struct Decomposition {
  DensityField rho;
  /// ||g||^2_{L^2_{F^{-1}}} at this instant (x-integrated).
  double g_norm_squared = 0.0;
  /// ||f||_{L^2_{F^{-1}}}.
  double f_norm = 0.0;
};

struct MonitorRow {
  double t = 0.0;
  double mass = 0.0;
  double f_norm = 0.0;
  /// (int_0^t ||g||^2 ds)^{1/2}, trapezoid rule over the steps.
  double g_norm_accum = 0.0;
  double rho_l2 = 0.0;
};

struct Snapshot {
  double t = 0.0;
  DensityField rho;
};

struct KineticRun {
  std::vector<Snapshot> snapshots;
  std::vector<MonitorRow> monitors;
  PhaseSpaceState final_state;
  double f0_norm = 0.0;
  int steps = 0;
  double dt = 0.0;
};

/// Strang splitting for eps^alpha d_t f + eps v d_x f = L f on the torus.
class KineticSolver {
 public:
  /// Simple operator L f = <f> F - f.
  KineticSolver(VelocitySpace space, int n_x, double epsilon);
  /// General detailed-balance operator of `model`.
  KineticSolver(VelocitySpace space, int n_x, double epsilon, CollisionModel model);
  ~KineticSolver();
  KineticSolver(KineticSolver&&) noexcept;
  KineticSolver& operator=(KineticSolver&&) noexcept;

  const VelocitySpace& velocity() const { return space_; }
  const PeriodicGrid& grid() const { return grid_; }
  double epsilon() const { return epsilon_; }
  double alpha() const { return space_.spec().alpha(); }
  bool uses_general_operator() const { return model_.has_value(); }

  /// f0 = rho0(x) F(v). Throws std::invalid_argument when rho0 has a negative value.
  PhaseSpaceState init_state(const DensityField& rho0) const;

  /// exp(-i k v eps^{1 - alpha} tau): exact transport over a sub-step of length tau.
  std::complex<double> transport_phase(int k, double v, double tau) const;

  void transport(PhaseSpaceState& state, double tau) const;
  void collide(PhaseSpaceState& state, double dt) const;
  /// Half transport, full collision, half transport.
  void step(PhaseSpaceState& state, double dt) const;

  /// Advances to time T in ceil(T / dt) equal steps. Snapshots are taken at the
  /// step nearest to every requested time. Throws std::runtime_error on growth of f_norm.
  KineticRun solve(PhaseSpaceState state, double T, double dt,
                   const std::vector<double>& snapshot_times = {}) const;

  Decomposition decompose(const PhaseSpaceState& state) const;
  /// 2 pi Re sum_j w_j f_hat(0, v_j).
  double mass(const PhaseSpaceState& state) const;

 private:
  struct Factorization;
  const Factorization& factorization(double h) const;

  VelocitySpace space_;
  PeriodicGrid grid_;
  double epsilon_;
  std::optional<CollisionModel> model_;
  mutable std::unique_ptr<Factorization> cache_;
};

}  // namespace fraclimit
