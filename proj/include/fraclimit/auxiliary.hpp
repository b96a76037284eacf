#pragma once

#include "fraclimit/collision.hpp"
#include "fraclimit/periodic.hpp"
#include "fraclimit/quadrature.hpp"

#include <complex>
#include <string>

namespace fraclimit {

/// Smooth 2 pi-periodic test function phi(x); t enters only as a parameter.
class TestFunction {
 public:
  enum class Kind { constant, cosine, sine, plane_wave };

  static TestFunction constant(double c);
  /// amplitude * cos(k (x - shift))
  static TestFunction cosine(int k, double amplitude = 1.0, double shift = 0.0);
  static TestFunction sine(int k, double amplitude = 1.0, double shift = 0.0);
  /// amplitude * e^{i k x}
  static TestFunction plane_wave(int k, double amplitude = 1.0);

  Kind kind() const { return kind_; }
  int wavenumber() const { return k_; }
  double amplitude() const { return amplitude_; }
  bool is_complex() const { return kind_ == Kind::plane_wave; }
  /// Largest |k| present; sets the oscillation scale of the z-integrals.
  double bandwidth() const { return std::abs(static_cast<double>(k_)); }
  /// max_x |phi(x)|
  double sup_norm() const { return std::abs(amplitude_); }

  std::complex<double> operator()(double x, double t = 0.0) const;
  std::complex<double> gradient(double x, double t = 0.0) const;
  std::complex<double> laplacian(double x, double t = 0.0) const;
  std::complex<double> time_derivative(double, double = 0.0) const { return 0.0; }

  TestFunction shifted(double s) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::constant;
  int k_ = 0;
  double amplitude_ = 0.0;
  double shift_ = 0.0;
};

/// Rules for int_0^inf e^{-z} (.) dz: 64-point Gauss-Laguerre while the integrand
/// oscillates slowly, composite Gauss-Legendre on [0, 40] otherwise.
struct ZQuadrature {
  QuadratureRule laguerre;
  QuadratureRule panel;  // reference rule on [-1, 1]
  double switch_omega = 2.0;
  double z_max = 40.0;

  static const ZQuadrature& standard();
  /// Gauss-Legendre panels of length at most `max_panel` covering [0, z_end].
  QuadratureRule composite(double z_end, double max_panel) const;
};

/// chi = int_0^inf e^{-z} phi(x + eps v z) dz.
std::complex<double> eval_chi_simple(const TestFunction& phi, double epsilon, double x, double v,
                                     double t = 0.0);

/// chi = int_0^inf exp(-int_0^z nu(x + eps v s, v) ds) nu(x + eps v z, v) phi(x + eps v z) dz.
std::complex<double> eval_chi_general(const TestFunction& phi, const CollisionModel& model,
                                      double epsilon, double x, double v, double t = 0.0);

/// eps^{-alpha} sum_j w_j F_j (chi_j - phi) at the points of an n_x grid (Theorem 1 form), or
/// eps^{-alpha} sum_j w_j nu(x, v_j) F_j (chi_j - phi) when a model is given.
/// Throws std::invalid_argument for eps <= 0.
Eigen::VectorXcd apply_Leps_complex(const TestFunction& phi, double epsilon,
                                    const VelocitySpace& space, int n_x,
                                    const CollisionModel* model = nullptr, double t = 0.0);

/// Real part of apply_Leps_complex for a real test function.
DensityField apply_Leps(const TestFunction& phi, double epsilon, const VelocitySpace& space,
                        int n_x, const CollisionModel* model = nullptr, double t = 0.0);

}  // namespace fraclimit
