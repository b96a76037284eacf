#include "fraclimit/collision.hpp"

#include <stdexcept>

namespace fraclimit {

VelocitySpace::VelocitySpace(const EquilibriumSpec& spec, VelocityQuadrature quad)
    : spec_(spec), quad_(std::move(quad)) {
  F_ = discrete_equilibrium(spec_, quad_);
  v_ = quad_.speeds();
}

namespace {

Eigen::MatrixXd kernel_matrix(const CollisionModel& model, const VelocitySpace& space, double x) {
  const Eigen::VectorXd& v = space.speeds();
  const Eigen::Index n = space.size();
  Eigen::MatrixXd b(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) {
      b(i, j) = model.kernel(x, v(i), v(j));
      b(j, i) = b(i, j);
    }
  }
  return b;
}

void check_space(const VelocitySpace& space) {
  if (space.quadrature().dim() != 1) {
    throw std::invalid_argument("collision: general operator needs a one-dimensional velocity grid");
  }
}

}  // namespace

Eigen::VectorXd discrete_frequency(const CollisionModel& model, const VelocitySpace& space, double x) {
  check_space(space);
  const Eigen::MatrixXd b = kernel_matrix(model, space, x);
  const Eigen::VectorXd wF = space.weights().cwiseProduct(space.equilibrium());
  return b.transpose() * wF;
}

Eigen::MatrixXd collision_matrix(const CollisionModel& model, const VelocitySpace& space, double x) {
  check_space(space);
  const Eigen::MatrixXd b = kernel_matrix(model, space, x);
  const Eigen::VectorXd& w = space.weights();
  const Eigen::VectorXd& F = space.equilibrium();
  const Eigen::VectorXd nu = b.transpose() * w.cwiseProduct(F);
  Eigen::MatrixXd L = F.asDiagonal() * b * w.asDiagonal();
  L.diagonal() -= nu;
  return L;
}

Eigen::VectorXd apply_collision_general(const CollisionModel& model, const VelocitySpace& space,
                                        double x, const Eigen::Ref<const Eigen::VectorXd>& f) {
  return collision_matrix(model, space, x) * f;
}

double dirichlet_form(const CollisionModel& model, const VelocitySpace& space, double x,
                      const Eigen::Ref<const Eigen::VectorXd>& f) {
  check_space(space);
  const Eigen::MatrixXd b = kernel_matrix(model, space, x);
  const Eigen::VectorXd& w = space.weights();
  const Eigen::VectorXd& F = space.equilibrium();
  const Eigen::VectorXd ratio = f.cwiseQuotient(F);
  const Eigen::VectorXd wF = w.cwiseProduct(F);
  double sum = 0.0;
  for (Eigen::Index j = 0; j < space.size(); ++j) {
    for (Eigen::Index i = 0; i < space.size(); ++i) {
      const double d = ratio(j) - ratio(i);
      sum += wF(i) * wF(j) * b(i, j) * d * d;
    }
  }
  return -0.5 * sum;
}

}  // namespace fraclimit
