#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <type_traits>

namespace fraclimit {

/// A one-dimensional quadrature rule: sum_j weights(j) * g(nodes(j)).
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;

  Eigen::Index size() const { return nodes.size(); }

  template <typename Func>
  auto apply(Func&& g) const {
    using Scalar = std::decay_t<decltype(g(0.0))>;
    Scalar sum(0);
    for (Eigen::Index j = 0; j < nodes.size(); ++j) sum += weights(j) * g(nodes(j));
    return sum;
  }
};

/// Gauss-Jacobi rule on [-1, 1] for the weight (1 - t)^a (1 + t)^b, a, b > -1,
/// computed by the Golub-Welsch eigenvalue method.
QuadratureRule gauss_jacobi(int n, double a, double b);

/// Gauss-Legendre rule on [lo, hi].
QuadratureRule gauss_legendre(int n, double lo = -1.0, double hi = 1.0);

/// Gauss-Laguerre rule for int_0^inf e^{-z} g(z) dz.
QuadratureRule gauss_laguerre(int n);

/// Composite Gauss-Legendre: `panels` equal panels of `points` nodes each.
QuadratureRule composite_legendre(double lo, double hi, int panels, int points);

/// Rule for int_0^inf z^p e^{-z} g(z) dz, p > -1: Gauss-Jacobi on [0, 1] with
/// the z^p weight, Gauss-Laguerre on the shifted half line [1, inf).
/// Sum of weights equals Gamma(p + 1) without evaluating a Gamma function.
QuadratureRule power_exponential_rule(double p, int n_jacobi = 40, int n_laguerre = 64);

}  // namespace fraclimit
