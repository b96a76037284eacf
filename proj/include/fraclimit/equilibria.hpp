#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace fraclimit {

enum class TailFamily {
  /// F(v) = a (1 + |v|^2)^{-(N + alpha)/2}
  generalized_cauchy,
  /// F(v) = kappa0 |v|^{-(N + alpha)} for |v| >= r, even C^2 polynomial core inside.
  exact_tail,
};

std::string to_string(TailFamily family);
TailFamily tail_family_from_string(const std::string& name);

/// Heavy-tail velocity equilibrium, normalized to unit mass, with
/// |v|^{N + alpha} F(v) -> kappa0 as |v| -> infinity.
class EquilibriumSpec {
 public:
  int dim() const { return dim_; }
  double alpha() const { return alpha_; }
  double kappa0() const { return normalizer_; }
  double normalizer() const { return normalizer_; }
  TailFamily family() const { return family_; }
  /// Radius where the exact power tail starts (exact_tail), 0 otherwise.
  double core_radius() const { return core_radius_; }

  /// Unnormalized radial profile F(v) / normalizer as a function of r = |v|.
  double shape(double r) const;
  double radial(double r) const { return normalizer_ * shape(r); }

  double operator()(double v) const { return radial(std::abs(v)); }
  template <typename Derived>
  double operator()(const Eigen::MatrixBase<Derived>& v) const {
    return radial(v.norm());
  }

  /// int_{|v| <= r} F dv over the ball, analytic where the family allows it.
  double core_mass(double r) const;

 private:
  friend EquilibriumSpec make_heavy_tail_family(double alpha, int dim);
  friend EquilibriumSpec make_exact_tail_family(double alpha, int dim, double core_radius);

  int dim_ = 1;
  double alpha_ = 1.0;
  double normalizer_ = 1.0;
  TailFamily family_ = TailFamily::generalized_cauchy;
  double core_radius_ = 0.0;
  // Even core polynomial p(s) = c0 + c1 s^2 + c2 s^4 (exact_tail only).
  double c0_ = 0.0, c1_ = 0.0, c2_ = 0.0;
};

/// Generalized-Cauchy family. Throws std::domain_error for alpha outside (0, 2) or dim < 1.
EquilibriumSpec make_heavy_tail_family(double alpha, int dim = 1);

/// Exact power tail beyond `core_radius`, C^2-matched even polynomial core.
EquilibriumSpec make_exact_tail_family(double alpha, int dim = 1, double core_radius = 1.0);

/// kappa0 of the spec.
double tail_constant(const EquilibriumSpec& spec);

/// Surface area of the unit sphere S^{N-1} (2 for N = 1).
double unit_sphere_area(int dim);

enum class CollisionProfile {
  /// b = 1: sigma(v, v') = F(v), nu = 1.
  uniform,
  /// b = nu0(x) with nu0(x) = 1 + a cos x; nu independent of v.
  smooth_nu0,
  /// b = nu0(x) (1 + beta (psi(v) + psi(v'))) with psi a zero-mean bump in |v| < C.
  velocity_blend,
};

std::string to_string(CollisionProfile profile);
CollisionProfile collision_profile_from_string(const std::string& name);

struct CollisionParams {
  CollisionProfile profile = CollisionProfile::uniform;
  double amplitude = 0.0;        // a in nu0(x) = 1 + a cos x
  double nu1 = 0.25;
  double nu2 = 2.5;
  double blend_strength = 0.2;   // beta
  double blend_radius = 5.0;     // C
};

/// Detailed-balance collision model on the one-dimensional torus:
/// sigma(x, v, v') = b(x, v, v') F(v) with b symmetric in (v, v').
/// All built-in profiles are separable, nu(x, v) = nu0(x) m(v).
class CollisionModel {
 public:
  CollisionModel(const CollisionParams& params, const EquilibriumSpec& spec);

  const CollisionParams& params() const { return params_; }
  const EquilibriumSpec& equilibrium() const { return spec_; }
  CollisionProfile profile() const { return params_.profile; }
  double nu1() const { return params_.nu1; }
  double nu2() const { return params_.nu2; }
  double grad_bound() const { return grad_bound_; }

  double nu0(double x) const;
  /// int_a^b nu0(y) dy in closed form.
  double nu0_integral(double a, double b) const;
  /// Period average of nu0.
  double nu0_mean() const { return 1.0; }
  /// int_0^z nu0(x + w s) ds, stable as w z -> 0.
  double ray_integral(double x, double w, double z) const;
  /// int_0^1 nu0((1 - s) x + s y) ds, symmetric in (x, y) to rounding.
  double segment_mean(double x, double y) const;
  double nu0_min() const { return 1.0 - std::abs(params_.amplitude); }
  double nu0_max() const { return 1.0 + std::abs(params_.amplitude); }
  /// Range of m(v) over all v.
  double velocity_factor_min() const;
  double velocity_factor_max() const;

  /// m(v) = nu(x, v) / nu0(x).
  double velocity_factor(double v) const;
  double nu(double x, double v) const { return nu0(x) * velocity_factor(v); }
  /// Symmetric part b(x, v, v').
  double kernel(double x, double v, double vp) const;
  double sigma(double x, double v, double vp) const { return kernel(x, v, vp) * spec_(v); }

  /// psi of the velocity_blend profile (zero elsewhere).
  double blend(double v) const;
  double blend_mean() const { return blend_mean_; }

 private:
  CollisionParams params_;
  EquilibriumSpec spec_;
  double blend_center_ = 0.0;  // c* making psi F-mean-free
  double blend_scale_ = 1.0;   // normalizes max |psi| to 1
  double blend_mean_ = 0.0;    // int psi F dv
  double blend_min_ = 0.0, blend_max_ = 0.0;
  double grad_bound_ = 0.0;
};

CollisionModel make_collision_model(const CollisionParams& params, const EquilibriumSpec& spec);

}  // namespace fraclimit
