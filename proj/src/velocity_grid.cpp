#include "fraclimit/velocity_grid.hpp"

#include "fraclimit/quadrature.hpp"

#include <numbers>
#include <vector>

namespace fraclimit {

std::string to_string(VelocityMap map) {
  switch (map) {
    case VelocityMap::tangent: return "tangent";
    case VelocityMap::split_power: return "split_power";
    case VelocityMap::automatic: return "auto";
  }
  return "unknown";
}

VelocityMap velocity_map_from_string(const std::string& name) {
  if (name == "tangent") return VelocityMap::tangent;
  if (name == "split_power") return VelocityMap::split_power;
  if (name == "auto" || name == "automatic") return VelocityMap::automatic;
  throw std::invalid_argument("unknown velocity map '" + name + "'");
}

namespace {

QuadratureRule tangent_rule(double alpha, int n) {
  // F dv ~ cos^{alpha - 1}(pi t / 2) dt near t = +-1: put (1 - t^2)^{alpha - 1} in the weight.
  const QuadratureRule ref = gauss_jacobi(n, alpha - 1.0, alpha - 1.0);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int j = 0; j < n; ++j) {
    const double t = ref.nodes(j);
    const double theta = 0.5 * std::numbers::pi * t;
    const double c = std::cos(theta);
    rule.nodes(j) = std::tan(theta);
    rule.weights(j) = ref.weights(j) * 0.5 * std::numbers::pi / (c * c) *
                      std::pow(1.0 - t * t, 1.0 - alpha);
  }
  return rule;
}

QuadratureRule split_power_rule(double alpha, double radius, int n) {
  const int n_tail = n / 4;
  const int n_core = n - 2 * n_tail;
  const QuadratureRule core = gauss_legendre(n_core, -radius, radius);
  // int_r^inf g dv = r^{-alpha} int_0^1 [g(r/s) (r/s)^{1+alpha}] s^{alpha-1} ds, s = (1 + t) / 2.
  const QuadratureRule jac = gauss_jacobi(n_tail, 0.0, alpha - 1.0);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double scale = std::pow(2.0, -alpha) * radius;
  // Ascending order: left tail (s increasing means v decreasing in magnitude), core, right tail.
  for (int j = 0; j < n_tail; ++j) {
    const double s = 0.5 * (1.0 + jac.nodes(j));
    const double v = radius / s;
    const double w = scale * jac.weights(j) * std::pow(s, -1.0 - alpha);
    rule.nodes(j) = -v;
    rule.weights(j) = w;
    rule.nodes(n - 1 - j) = v;
    rule.weights(n - 1 - j) = w;
  }
  for (int j = 0; j < n_core; ++j) {
    rule.nodes(n_tail + j) = core.nodes(j);
    rule.weights(n_tail + j) = core.weights(j);
  }
  return rule;
}

}  // namespace

VelocityQuadrature build_velocity_quadrature(const EquilibriumSpec& spec, int n_nodes,
                                             VelocityMap map) {
  if (n_nodes % 2 != 0) {
    throw std::invalid_argument("build_velocity_quadrature: n_nodes must be even, got " +
                                std::to_string(n_nodes));
  }
  if (n_nodes < 8) {
    throw std::invalid_argument("build_velocity_quadrature: n_nodes must be at least 8, got " +
                                std::to_string(n_nodes));
  }
  if (map == VelocityMap::automatic) {
    map = spec.family() == TailFamily::exact_tail ? VelocityMap::split_power : VelocityMap::tangent;
  }
  QuadratureRule line;
  if (map == VelocityMap::tangent) {
    line = tangent_rule(spec.alpha(), n_nodes);
  } else {
    const double radius = spec.core_radius() > 0.0 ? spec.core_radius() : 1.0;
    line = split_power_rule(spec.alpha(), radius, n_nodes);
  }

  const int dim = spec.dim();
  Eigen::Index total = 1;
  for (int d = 0; d < dim; ++d) total *= n_nodes;
  VelocityQuadrature quad;
  quad.map = map;
  quad.nodes.resize(dim, total);
  quad.weights.resize(total);
  for (Eigen::Index idx = 0; idx < total; ++idx) {
    Eigen::Index rest = idx;
    double w = 1.0;
    for (int d = 0; d < dim; ++d) {
      const Eigen::Index j = rest % n_nodes;
      rest /= n_nodes;
      quad.nodes(d, idx) = line.nodes(j);
      w *= line.weights(j);
    }
    quad.weights(idx) = w;
  }
  quad.tail_cutoff = line.nodes.cwiseAbs().maxCoeff();
  return quad;
}

double tail_mass(const EquilibriumSpec& spec, double M) {
  if (M <= 0.0) return 1.0;
  if (spec.family() == TailFamily::exact_tail || M < 1.0) return 1.0 - spec.core_mass(M);
  // s = M / u: int_M^inf F(s) s^{N-1} ds = M^{-alpha} int_0^1 [F(M/u) (M/u)^{N+alpha}] u^{alpha-1} du
  const double alpha = spec.alpha();
  const int dim = spec.dim();
  const QuadratureRule jac = gauss_jacobi(64, 0.0, alpha - 1.0);
  double sum = 0.0;
  for (Eigen::Index j = 0; j < jac.size(); ++j) {
    const double u = 0.5 * (1.0 + jac.nodes(j));
    const double s = M / u;
    sum += jac.weights(j) * spec.radial(s) * std::pow(s, dim + alpha);
  }
  return unit_sphere_area(dim) * std::pow(M, -alpha) * std::pow(2.0, -alpha) * sum;
}

Eigen::VectorXd discrete_equilibrium(const EquilibriumSpec& spec, const VelocityQuadrature& quad) {
  Eigen::VectorXd F(quad.size());
  for (Eigen::Index j = 0; j < quad.size(); ++j) F(j) = spec(quad.nodes.col(j));
  return F / quad.weights.dot(F);
}

}  // namespace fraclimit
