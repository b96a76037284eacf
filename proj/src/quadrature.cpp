#include "fraclimit/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <stdexcept>
#include <string>

namespace fraclimit {
namespace {

// Golub-Welsch: nodes are the eigenvalues of the symmetric Jacobi matrix,
// weights are mu0 times the squared first eigenvector components.
QuadratureRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag,
                            double mu0) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, offdiag, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("golub_welsch: tridiagonal eigensolver failed");
  }
  QuadratureRule rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = mu0 * solver.eigenvectors().row(0).transpose().array().square();
  return rule;
}

}  // namespace

QuadratureRule gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi: n must be positive");
  if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("gauss_jacobi: exponents must exceed -1");

  const double ab = a + b;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd offdiag(n > 1 ? n - 1 : 0);
  diag(0) = (b - a) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    diag(k) = (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    double beta;
    if (k == 1) {
      // (k + a + b) cancels against (s - 1); keeps a + b = -1 finite.
      beta = 4.0 * (1.0 + a) * (1.0 + b) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
    } else {
      beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    offdiag(k - 1) = std::sqrt(beta);
  }
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                              std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
  QuadratureRule rule = golub_welsch(diag, offdiag, mu0);

  if (a == b) {
    // Symmetric weight: enforce exact node/weight symmetry.
    for (int j = 0; j < n / 2; ++j) {
      const int m = n - 1 - j;
      const double t = 0.5 * (rule.nodes(m) - rule.nodes(j));
      const double w = 0.5 * (rule.weights(m) + rule.weights(j));
      rule.nodes(j) = -t;
      rule.nodes(m) = t;
      rule.weights(j) = w;
      rule.weights(m) = w;
    }
    if (n % 2 == 1) rule.nodes(n / 2) = 0.0;
  }
  return rule;
}

QuadratureRule gauss_legendre(int n, double lo, double hi) {
  QuadratureRule rule = gauss_jacobi(n, 0.0, 0.0);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  rule.nodes = (half * rule.nodes.array() + mid).matrix();
  rule.weights *= half;
  return rule;
}

QuadratureRule gauss_laguerre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_laguerre: n must be positive");
  Eigen::VectorXd diag(n);
  Eigen::VectorXd offdiag(n > 1 ? n - 1 : 0);
  for (int k = 0; k < n; ++k) diag(k) = 2.0 * k + 1.0;
  for (int k = 1; k < n; ++k) offdiag(k - 1) = static_cast<double>(k);
  return golub_welsch(diag, offdiag, 1.0);
}

QuadratureRule composite_legendre(double lo, double hi, int panels, int points) {
  if (panels < 1) throw std::invalid_argument("composite_legendre: panels must be positive");
  const QuadratureRule ref = gauss_jacobi(points, 0.0, 0.0);
  QuadratureRule rule;
  rule.nodes.resize(static_cast<Eigen::Index>(panels) * points);
  rule.weights.resize(rule.nodes.size());
  const double width = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * width;
    for (int j = 0; j < points; ++j) {
      rule.nodes(p * points + j) = mid + 0.5 * width * ref.nodes(j);
      rule.weights(p * points + j) = 0.5 * width * ref.weights(j);
    }
  }
  return rule;
}

QuadratureRule power_exponential_rule(double p, int n_jacobi, int n_laguerre) {
  if (p <= -1.0) throw std::invalid_argument("power_exponential_rule: exponent must exceed -1");
  // [0, 1]: z = (1 + t) / 2, (1 + t)^p = 2^p z^p, dz = dt / 2.
  const QuadratureRule jac = gauss_jacobi(n_jacobi, 0.0, p);
  const QuadratureRule lag = gauss_laguerre(n_laguerre);
  QuadratureRule rule;
  rule.nodes.resize(n_jacobi + n_laguerre);
  rule.weights.resize(n_jacobi + n_laguerre);
  const double scale = std::pow(2.0, -(p + 1.0));
  for (int j = 0; j < n_jacobi; ++j) {
    const double z = 0.5 * (1.0 + jac.nodes(j));
    rule.nodes(j) = z;
    rule.weights(j) = scale * jac.weights(j) * std::exp(-z);
  }
  // [1, inf): z = 1 + s, z^p e^{-z} = e^{-1} (1 + s)^p e^{-s}.
  for (int m = 0; m < n_laguerre; ++m) {
    const double s = lag.nodes(m);
    rule.nodes(n_jacobi + m) = 1.0 + s;
    rule.weights(n_jacobi + m) = std::exp(-1.0) * lag.weights(m) * std::pow(1.0 + s, p);
  }
  return rule;
}

}  // namespace fraclimit
