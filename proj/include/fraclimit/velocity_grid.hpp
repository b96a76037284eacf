#pragma once

#include "fraclimit/equilibria.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace fraclimit {

enum class VelocityMap {
  /// v = tan(pi t / 2) with Gauss-Jacobi nodes in t; exact weight for the Cauchy family.
  tangent,
  /// Gauss-Legendre core on [-r, r], v = r / s on each tail with an s^{alpha - 1} Jacobi weight.
  split_power,
  /// tangent for generalized_cauchy, split_power for exact_tail.
  automatic,
};

std::string to_string(VelocityMap map);
VelocityMap velocity_map_from_string(const std::string& name);

/// Symmetric quadrature over R^N. Column j of `nodes` is v_j.
struct VelocityQuadrature {
  Eigen::MatrixXd nodes;
  Eigen::VectorXd weights;
  VelocityMap map = VelocityMap::tangent;
  double tail_cutoff = 0.0;

  int dim() const { return static_cast<int>(nodes.rows()); }
  Eigen::Index size() const { return weights.size(); }
  /// First coordinate of every node (the velocity itself when N = 1).
  Eigen::VectorXd speeds() const { return nodes.row(0).transpose(); }
};

/// Throws std::invalid_argument for odd n_nodes or n_nodes < 8.
/// For N > 1 the rule is the tensor product of the one-dimensional rule.
VelocityQuadrature build_velocity_quadrature(const EquilibriumSpec& spec, int n_nodes,
                                             VelocityMap map = VelocityMap::automatic);

/// sum_j w_j g(v_j). g receives a double (N = 1) or an Eigen column (N > 1).
template <typename Func>
auto integrate(const VelocityQuadrature& quad, Func&& g) {
  auto eval = [&](Eigen::Index j) {
    if constexpr (std::is_invocable_v<Func&, double>) {
      return g(quad.nodes(0, j));
    } else {
      return g(quad.nodes.col(j));
    }
  };
  using Scalar = std::decay_t<decltype(eval(0))>;
  Scalar sum(0);
  for (Eigen::Index j = 0; j < quad.size(); ++j) {
    const Scalar value = eval(j);
    if (!std::isfinite(std::abs(value))) {
      std::ostringstream os;
      os << "integrate: non-finite integrand at node " << j << " (v = " << quad.nodes(0, j) << ")";
      throw std::domain_error(os.str());
    }
    sum += quad.weights(j) * value;
  }
  return sum;
}

/// int_{|v| >= M} F dv.
double tail_mass(const EquilibriumSpec& spec, double M);

/// F at the nodes, rescaled so that sum_j w_j F_j = 1 to rounding.
Eigen::VectorXd discrete_equilibrium(const EquilibriumSpec& spec, const VelocityQuadrature& quad);

}  // namespace fraclimit
