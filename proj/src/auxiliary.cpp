#include "fraclimit/auxiliary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fraclimit {

using cd = std::complex<double>;

TestFunction TestFunction::constant(double c) {
  TestFunction f;
  f.kind_ = Kind::constant;
  f.amplitude_ = c;
  return f;
}

TestFunction TestFunction::cosine(int k, double amplitude, double shift) {
  TestFunction f;
  f.kind_ = Kind::cosine;
  f.k_ = k;
  f.amplitude_ = amplitude;
  f.shift_ = shift;
  return f;
}

TestFunction TestFunction::sine(int k, double amplitude, double shift) {
  TestFunction f = cosine(k, amplitude, shift);
  f.kind_ = Kind::sine;
  return f;
}

TestFunction TestFunction::plane_wave(int k, double amplitude) {
  TestFunction f;
  f.kind_ = Kind::plane_wave;
  f.k_ = k;
  f.amplitude_ = amplitude;
  return f;
}

cd TestFunction::operator()(double x, double) const {
  const double theta = k_ * (x - shift_);
  switch (kind_) {
    case Kind::constant: return amplitude_;
    case Kind::cosine: return amplitude_ * std::cos(theta);
    case Kind::sine: return amplitude_ * std::sin(theta);
    case Kind::plane_wave: return std::polar(amplitude_, theta);
  }
  return 0.0;
}

cd TestFunction::gradient(double x, double) const {
  const double theta = k_ * (x - shift_);
  switch (kind_) {
    case Kind::constant: return 0.0;
    case Kind::cosine: return -amplitude_ * k_ * std::sin(theta);
    case Kind::sine: return amplitude_ * k_ * std::cos(theta);
    case Kind::plane_wave: return cd(0.0, k_) * std::polar(amplitude_, theta);
  }
  return 0.0;
}

cd TestFunction::laplacian(double x, double t) const {
  return -static_cast<double>(k_) * k_ * (*this)(x, t);
}

TestFunction TestFunction::shifted(double s) const {
  if (kind_ == Kind::plane_wave) {
    throw std::invalid_argument("TestFunction::shifted: plane waves do not support shifts");
  }
  TestFunction f = *this;
  f.shift_ = shift_ + s;
  return f;
}

std::string TestFunction::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::constant: os << amplitude_; break;
    case Kind::cosine: os << amplitude_ << "*cos(" << k_ << "x)"; break;
    case Kind::sine: os << amplitude_ << "*sin(" << k_ << "x)"; break;
    case Kind::plane_wave: os << amplitude_ << "*exp(i" << k_ << "x)"; break;
  }
  return os.str();
}

const ZQuadrature& ZQuadrature::standard() {
  static const ZQuadrature rules = [] {
    ZQuadrature q;
    q.laguerre = gauss_laguerre(64);
    q.panel = gauss_legendre(10);
    return q;
  }();
  return rules;
}

QuadratureRule ZQuadrature::composite(double z_end, double max_panel) const {
  const int panels = std::max(1, static_cast<int>(std::ceil(z_end / max_panel)));
  const double width = z_end / panels;
  const Eigen::Index m = panel.size();
  QuadratureRule rule;
  rule.nodes.resize(panels * m);
  rule.weights.resize(panels * m);
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    for (Eigen::Index j = 0; j < m; ++j) {
      rule.nodes(p * m + j) = mid + 0.5 * width * panel.nodes(j);
      rule.weights(p * m + j) = 0.5 * width * panel.weights(j);
    }
  }
  return rule;
}

namespace {

// Sum over a composite rule without materializing it.
template <typename Func>
cd sum_composite(const ZQuadrature& zq, double z_end, double max_panel, Func&& g) {
  const int panels = std::max(1, static_cast<int>(std::ceil(z_end / max_panel)));
  const double width = z_end / panels;
  cd sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    for (Eigen::Index j = 0; j < zq.panel.size(); ++j) {
      sum += (0.5 * width * zq.panel.weights(j)) * g(mid + 0.5 * width * zq.panel.nodes(j));
    }
  }
  return sum;
}

}  // namespace

cd eval_chi_simple(const TestFunction& phi, double epsilon, double x, double v, double t) {
  if (epsilon < 0.0) throw std::invalid_argument("eval_chi_simple: epsilon must be nonnegative");
  const double w = epsilon * v;
  if (w == 0.0 || phi.kind() == TestFunction::Kind::constant) return phi(x, t);
  const ZQuadrature& zq = ZQuadrature::standard();
  const double omega = std::abs(w) * phi.bandwidth();
  if (omega <= zq.switch_omega) {
    return zq.laguerre.apply([&](double z) { return phi(x + w * z, t); });
  }
  const double panel = std::min(1.0, 2.0 / (1.0 + omega));
  return sum_composite(zq, zq.z_max, panel,
                       [&](double z) { return std::exp(-z) * phi(x + w * z, t); });
}

cd eval_chi_general(const TestFunction& phi, const CollisionModel& model, double epsilon, double x,
                    double v, double t) {
  if (epsilon < 0.0) throw std::invalid_argument("eval_chi_general: epsilon must be nonnegative");
  const double w = epsilon * v;
  if (w == 0.0 || phi.kind() == TestFunction::Kind::constant) return phi(x, t);
  const double m = model.velocity_factor(v);
  const double nu_lo = model.nu0_min() * m;
  const double nu_hi = model.nu0_max() * m;
  const ZQuadrature& zq = ZQuadrature::standard();
  const double omega = std::abs(w) * phi.bandwidth() / nu_lo;

  if (omega <= zq.switch_omega) {
    // u = Lambda(z) = m int_0^z nu0(x + w s) ds is increasing with slope in [nu_lo, nu_hi].
    cd sum = 0.0;
    double z_prev = 0.0;
    for (Eigen::Index q = 0; q < zq.laguerre.size(); ++q) {
      const double u = zq.laguerre.nodes(q);
      double lo = std::max(z_prev, u / nu_hi);
      double hi = u / nu_lo;
      double z = std::clamp(u / (m * model.nu0(x)), lo, hi);
      for (int it = 0; it < 100; ++it) {
        const double r = m * model.ray_integral(x, w, z) - u;
        if (std::abs(r) <= 1e-15 * std::max(1.0, u)) break;
        if (r > 0.0) hi = z; else lo = z;
        double next = z - r / (m * model.nu0(x + w * z));
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == z || hi - lo <= 1e-16 * std::max(1.0, hi)) {
          z = next;
          break;
        }
        z = next;
      }
      z_prev = z;
      sum += zq.laguerre.weights(q) * phi(x + w * z, t);
    }
    return sum;
  }
  const double panel = std::min(1.0 / nu_hi, 2.0 / (1.0 + omega));
  return sum_composite(zq, zq.z_max / nu_lo, panel, [&](double z) {
    const double y = x + w * z;
    return std::exp(-m * model.ray_integral(x, w, z)) * m * model.nu0(y) * phi(y, t);
  });
}

Eigen::VectorXcd apply_Leps_complex(const TestFunction& phi, double epsilon,
                                    const VelocitySpace& space, int n_x,
                                    const CollisionModel* model, double t) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("apply_Leps: epsilon must be positive (the eps^-alpha rescaling is undefined at 0)");
  }
  if (space.quadrature().dim() != 1) throw std::invalid_argument("apply_Leps: N = 1 only");
  const PeriodicGrid grid(n_x);
  const Eigen::VectorXd& v = space.speeds();
  const Eigen::VectorXd wF = space.weights().cwiseProduct(space.equilibrium());
  const double scale = std::pow(epsilon, -space.spec().alpha());
  Eigen::VectorXcd out(n_x);
  for (int i = 0; i < n_x; ++i) {
    const double x = grid.point(i);
    const cd phi_x = phi(x, t);
    cd sum = 0.0;
    for (Eigen::Index j = 0; j < space.size(); ++j) {
      if (model) {
        const cd chi = eval_chi_general(phi, *model, epsilon, x, v(j), t);
        sum += wF(j) * model->nu(x, v(j)) * (chi - phi_x);
      } else {
        sum += wF(j) * (eval_chi_simple(phi, epsilon, x, v(j), t) - phi_x);
      }
    }
    out(i) = scale * sum;
  }
  return out;
}

DensityField apply_Leps(const TestFunction& phi, double epsilon, const VelocitySpace& space,
                        int n_x, const CollisionModel* model, double t) {
  if (phi.is_complex()) throw std::invalid_argument("apply_Leps: use apply_Leps_complex for complex phi");
  return DensityField(n_x, apply_Leps_complex(phi, epsilon, space, n_x, model, t).real());
}

}  // namespace fraclimit
