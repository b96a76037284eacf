#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>

namespace fraclimit {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Uniform grid x_i = 2 pi i / n on the torus [0, 2 pi).
class PeriodicGrid {
 public:
  explicit PeriodicGrid(int n);

  int size() const { return n_; }
  double spacing() const { return kTwoPi / n_; }
  double point(int i) const { return spacing() * i; }
  Eigen::VectorXd points() const;

  /// Signed wavenumber of FFT slot j: 0, 1, ..., n/2, -(n/2 - 1), ..., -1.
  int wavenumber(int j) const { return j <= n_ / 2 ? j : j - n_; }
  /// FFT slot holding wavenumber k (|k| <= n/2).
  int slot(int k) const { return k >= 0 ? k : k + n_; }
  bool is_nyquist(int j) const { return n_ % 2 == 0 && j == n_ / 2; }

 private:
  int n_;
};

/// Fourier coefficients c_k = (1/n) sum_i u_i e^{-i k x_i}, so u(x) = sum_k c_k e^{i k x}.
Eigen::VectorXcd to_spectrum(const Eigen::Ref<const Eigen::VectorXcd>& values);
Eigen::VectorXcd to_spectrum(const Eigen::Ref<const Eigen::VectorXd>& values);
/// Inverse of to_spectrum.
Eigen::VectorXcd from_spectrum(const Eigen::Ref<const Eigen::VectorXcd>& coeffs);

/// A real density rho(x) sampled on a periodic grid.
class DensityField {
 public:
  DensityField() = default;
  DensityField(int n, Eigen::VectorXd values);

  static DensityField from_function(int n, auto&& rho) {
    const PeriodicGrid grid(n);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = rho(grid.point(i));
    return DensityField(n, std::move(v));
  }
  static DensityField from_spectrum(const Eigen::Ref<const Eigen::VectorXcd>& coeffs);

  int size() const { return static_cast<int>(values_.size()); }
  PeriodicGrid grid() const { return PeriodicGrid(size()); }
  const Eigen::VectorXd& values() const { return values_; }
  double operator()(int i) const { return values_(i); }

  Eigen::VectorXcd spectrum() const { return to_spectrum(values_); }
  /// Fourier coefficient for signed wavenumber k.
  std::complex<double> mode(int k) const;

  /// int_0^{2 pi} rho dx (exact for trigonometric polynomials below Nyquist).
  double mass() const;
  /// L2(0, 2 pi) norm by the periodic trapezoid rule.
  double l2_norm() const;
  double sup_norm() const { return values_.cwiseAbs().maxCoeff(); }

  /// Samples at every `stride`-th point (restriction to a coarser nested grid).
  DensityField restrict_to(int n_coarse) const;

 private:
  Eigen::VectorXd values_;
};

}  // namespace fraclimit
