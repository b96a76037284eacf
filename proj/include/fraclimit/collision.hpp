#pragma once

#include "fraclimit/equilibria.hpp"
#include "fraclimit/velocity_grid.hpp"

#include <Eigen/Dense>

namespace fraclimit {

/// Quadrature plus the discrete equilibrium on it. Shared by every slice.
class VelocitySpace {
 public:
  VelocitySpace(const EquilibriumSpec& spec, VelocityQuadrature quad);

  const EquilibriumSpec& spec() const { return spec_; }
  const VelocityQuadrature& quadrature() const { return quad_; }
  const Eigen::VectorXd& weights() const { return quad_.weights; }
  /// Discrete equilibrium F_j, sum_j w_j F_j = 1.
  const Eigen::VectorXd& equilibrium() const { return F_; }
  const Eigen::VectorXd& speeds() const { return v_; }
  Eigen::Index size() const { return F_.size(); }

  /// <f> = sum_j w_j f_j.
  template <typename Derived>
  typename Derived::Scalar mass(const Eigen::MatrixBase<Derived>& f) const {
    return quad_.weights.dot(f.derived().template cast<typename Derived::Scalar>());
  }
  /// sum_j w_j f_j conj(g_j) / F_j: the L^2_{F^{-1}} inner product.
  template <typename A, typename B>
  typename A::Scalar inner(const Eigen::MatrixBase<A>& f, const Eigen::MatrixBase<B>& g) const {
    typename A::Scalar sum(0);
    for (Eigen::Index j = 0; j < size(); ++j) {
      sum += quad_.weights(j) * f(j) * Eigen::numext::conj(g(j)) / F_(j);
    }
    return sum;
  }
  template <typename A>
  double norm_squared(const Eigen::MatrixBase<A>& f) const {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < size(); ++j) sum += quad_.weights(j) * std::norm(f(j)) / F_(j);
    return sum;
  }

 private:
  EquilibriumSpec spec_;
  VelocityQuadrature quad_;
  Eigen::VectorXd F_;
  Eigen::VectorXd v_;
};

/// L f = <f> F - f.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> apply_collision_simple(
    const VelocitySpace& space, const Eigen::MatrixBase<Derived>& f) {
  using Scalar = typename Derived::Scalar;
  const Scalar rho = space.mass(f);
  return rho * space.equilibrium().template cast<Scalar>() - f;
}

/// Discrete loss frequency nu_j = sum_i w_i b(x, v_i, v_j) F_i.
Eigen::VectorXd discrete_frequency(const CollisionModel& model, const VelocitySpace& space, double x);

/// Dense matrix of L at x: L_ij = w_j b(x, v_i, v_j) F_i - nu_i delta_ij.
/// With the discrete nu, w^T L = 0 and L F = 0 hold to rounding.
Eigen::MatrixXd collision_matrix(const CollisionModel& model, const VelocitySpace& space, double x);

Eigen::VectorXd apply_collision_general(const CollisionModel& model, const VelocitySpace& space,
                                        double x, const Eigen::Ref<const Eigen::VectorXd>& f);

/// -1/2 sum_ij w_i w_j b_ij F_i F_j (f_j / F_j - f_i / F_i)^2.
double dirichlet_form(const CollisionModel& model, const VelocitySpace& space, double x,
                      const Eigen::Ref<const Eigen::VectorXd>& f);

}  // namespace fraclimit
