#include "fraclimit/periodic.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <stdexcept>

namespace fraclimit {

PeriodicGrid::PeriodicGrid(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("PeriodicGrid: need at least 2 points");
}

Eigen::VectorXd PeriodicGrid::points() const {
  Eigen::VectorXd x(n_);
  for (int i = 0; i < n_; ++i) x(i) = point(i);
  return x;
}

Eigen::VectorXcd to_spectrum(const Eigen::Ref<const Eigen::VectorXcd>& values) {
  Eigen::FFT<double> fft;
  const Eigen::VectorXcd in = values;
  Eigen::VectorXcd out;
  fft.fwd(out, in);
  return out / static_cast<double>(values.size());
}

Eigen::VectorXcd to_spectrum(const Eigen::Ref<const Eigen::VectorXd>& values) {
  const Eigen::VectorXcd complex_values = values.cast<std::complex<double>>();
  return to_spectrum(complex_values);
}

Eigen::VectorXcd from_spectrum(const Eigen::Ref<const Eigen::VectorXcd>& coeffs) {
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  const Eigen::VectorXcd in = coeffs;
  Eigen::VectorXcd out;
  fft.inv(out, in);
  return out;
}

DensityField::DensityField(int n, Eigen::VectorXd values) : values_(std::move(values)) {
  if (values_.size() != n) throw std::invalid_argument("DensityField: size mismatch");
  if (!values_.allFinite()) throw std::invalid_argument("DensityField: non-finite values");
}

DensityField DensityField::from_spectrum(const Eigen::Ref<const Eigen::VectorXcd>& coeffs) {
  const Eigen::VectorXcd v = fraclimit::from_spectrum(coeffs);
  return DensityField(static_cast<int>(v.size()), v.real());
}

std::complex<double> DensityField::mode(int k) const {
  const PeriodicGrid g = grid();
  if (std::abs(k) > size() / 2) throw std::out_of_range("DensityField::mode: |k| above Nyquist");
  return spectrum()(g.slot(k));
}

double DensityField::mass() const { return grid().spacing() * values_.sum(); }

double DensityField::l2_norm() const {
  return std::sqrt(grid().spacing() * values_.squaredNorm());
}

DensityField DensityField::restrict_to(int n_coarse) const {
  if (n_coarse <= 0 || size() % n_coarse != 0) {
    throw std::invalid_argument("DensityField::restrict_to: grids are not nested");
  }
  const int stride = size() / n_coarse;
  Eigen::VectorXd v(n_coarse);
  for (int i = 0; i < n_coarse; ++i) v(i) = values_(i * stride);
  return DensityField(n_coarse, std::move(v));
}

}  // namespace fraclimit
