#pragma once

#include "fraclimit/equilibria.hpp"
#include "fraclimit/periodic.hpp"

#include <Eigen/Dense>

#include <filesystem>
#include <vector>

namespace fraclimit {

/// int_0^inf z^p e^{-z} dz by quadrature of the defining integral.
double power_exponential_integral(double p);

/// 2^alpha Gamma((N + alpha)/2) / (pi^{N/2} |Gamma(-alpha/2)|)
double c_N_alpha_closed_form(int dim, double alpha);

struct FractionalConstant {
  int dim = 1;
  double alpha = 1.0;
  /// Normalizing constant of the singular-integral form (closed form).
  double c_N_alpha = 0.0;
  /// Least-squares fit of the discrete PV operator on cos(kx), k = 1..3, to |k|^alpha.
  double calibrated = 0.0;
  double calibration_residual = 0.0;
  /// kappa = kappa0 / c_N_alpha * int z^alpha e^{-z} dz (0 until a tail constant is attached).
  double kappa = 0.0;
};

/// Throws std::runtime_error when calibrated and closed-form constants differ by more than 1%.
FractionalConstant calibrate_cNalpha(int dim, double alpha);

/// Attaches kappa for the given equilibrium.
FractionalConstant make_fractional_constant(const EquilibriumSpec& spec);

struct PvOptions {
  /// Kernel images: the far field covers |w| <= 2 pi M.
  int images = 64;
  /// Bound on the far-tail truncation error before apply_* refuses.
  double tail_tolerance = 1e-3;
};

/// Weights of the principal-value quadrature
///   int_0^inf D(w) w^{-1-alpha} dw ~ sum_{l >= 1} c_l D(l h) + tail,
/// for D even, smooth, D(0) = 0. Local quartic fit on [0, h], cubic product
/// integration on [h, R], R = L h = 2 pi M.
class PvStencil {
 public:
  PvStencil(int n, double alpha, int images);

  int size() const { return n_; }
  double alpha() const { return alpha_; }
  double spacing() const { return kTwoPi / n_; }
  int last() const { return static_cast<int>(c_.size()) - 1; }
  double radius() const { return kTwoPi * images_; }
  /// c_l, index 0 unused.
  const Eigen::VectorXd& coefficients() const { return c_; }
  /// int_R^inf 2 w^{-1-alpha} dw = 2 R^{-alpha} / alpha.
  double tail_weight() const;
  /// Coefficients folded onto the torus: s_m = sum_{l = m mod n} c_l.
  Eigen::VectorXd folded() const;

 private:
  int n_;
  double alpha_;
  int images_;
  Eigen::VectorXd c_;
};

/// Spectral (-Delta)^{alpha/2}: rho_hat(k) <- |k|^alpha rho_hat(k).
DensityField frac_laplacian_multiplier(const DensityField& rho, double alpha);

/// c_{N,alpha} PV int (rho(x) - rho(y)) / |x - y|^{1 + alpha} dy on the periodic extension.
/// Throws std::runtime_error when the tail bound exceeds opts.tail_tolerance.
DensityField frac_laplacian_pv(const DensityField& rho, double alpha, const FractionalConstant& c,
                               const PvOptions& opts = {});

/// gamma(x, y) = nu0(x) nu0(y) Gamma(alpha + 1) / A(x, y)^{alpha + 1}, A the mean of nu0 on [x, y].
class GammaKernel {
 public:
  GammaKernel(const CollisionModel& model, double alpha, int n);

  double alpha() const { return alpha_; }
  int size() const { return static_cast<int>(values_.rows()); }
  const CollisionModel& model() const { return model_; }
  /// gamma along the real-line segment [x, y] (no reduction mod 2 pi).
  double operator()(double x, double y) const;
  /// gamma(x_i, x_j) on the grid.
  const Eigen::MatrixXd& values() const { return values_; }
  double gamma1() const { return gamma1_; }
  double gamma2() const { return gamma2_; }
  double gamma_alpha() const { return gamma_alpha_; }
  /// Upper bound of gamma(x, x + w) over |w| >= r.
  double far_bound(double r) const;

 private:
  CollisionModel model_;
  double alpha_;
  double gamma_alpha_;
  double gamma1_, gamma2_;
  Eigen::MatrixXd values_;
};

GammaKernel build_gamma_kernel(const CollisionModel& model, double alpha, int n);

/// Dense matrix of L rho = PV int gamma(x, y)(rho(x) - rho(y)) |x - y|^{-1-alpha} dy.
/// Symmetrized after checking the raw relative defect max|A - A^T| / max|A| is below 1e-6
/// (std::runtime_error otherwise); the raw defect is reported through `defect`.
Eigen::MatrixXd assemble_L_operator(const GammaKernel& kernel, const PvOptions& opts = {},
                                    double* defect = nullptr);

DensityField apply_L_operator(const DensityField& rho, const GammaKernel& kernel,
                              const PvOptions& opts = {});

/// Bound on the far-tail error of the PV sum for this rho, as used by the apply_* checks.
double pv_tail_bound(const DensityField& rho, double gamma_max, double alpha, int images);

/// rho(t) for d_t rho + kappa (-Delta)^{alpha/2} rho = 0, exact per mode.
std::vector<DensityField> solve_fractional_constant(const DensityField& rho0, double kappa,
                                                    double alpha, const std::vector<double>& times);

/// rho(t) for d_t rho + kappa0 L rho = 0 with the assembled symmetric operator,
/// exact exponential through its eigendecomposition.
std::vector<DensityField> solve_fractional_kernel(const DensityField& rho0,
                                                  const Eigen::MatrixXd& op, double kappa0,
                                                  const std::vector<double>& times);

/// Row-major little-endian float64 with a 16-byte header: "FLOP", uint32 n, float64 alpha.
void write_operator_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& op, double alpha);
Eigen::MatrixXd read_operator_matrix(const std::filesystem::path& path, double* alpha = nullptr);

}  // namespace fraclimit
