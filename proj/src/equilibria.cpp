#include "fraclimit/equilibria.hpp"

#include "fraclimit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace fraclimit {

std::string to_string(TailFamily family) {
  switch (family) {
    case TailFamily::generalized_cauchy: return "generalized_cauchy";
    case TailFamily::exact_tail: return "exact_tail";
  }
  return "unknown";
}

TailFamily tail_family_from_string(const std::string& name) {
  if (name == "generalized_cauchy" || name == "cauchy") return TailFamily::generalized_cauchy;
  if (name == "exact_tail") return TailFamily::exact_tail;
  throw std::invalid_argument("unknown equilibrium family '" + name + "'");
}

double unit_sphere_area(int dim) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

namespace {

void check_domain(double alpha, int dim) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    std::ostringstream os;
    os << "tail exponent alpha = " << alpha << " outside (0, 2)";
    throw std::domain_error(os.str());
  }
  if (dim < 1) throw std::domain_error("velocity dimension must be at least 1");
}

}  // namespace

double EquilibriumSpec::shape(double r) const {
  const double m = dim_ + alpha_;
  if (family_ == TailFamily::generalized_cauchy) return std::pow(1.0 + r * r, -0.5 * m);
  if (r >= core_radius_) return std::pow(r, -m);
  const double s2 = (r / core_radius_) * (r / core_radius_);
  return std::pow(core_radius_, -m) * (c0_ + s2 * (c1_ + s2 * c2_));
}

double EquilibriumSpec::core_mass(double r) const {
  if (r <= 0.0) return 0.0;
  const double area = unit_sphere_area(dim_);
  if (family_ == TailFamily::exact_tail) {
    const double rc = core_radius_;
    const double m = dim_ + alpha_;
    const double n = dim_;
    if (r >= rc) {
      return 1.0 - normalizer_ * area * std::pow(r, -alpha_) / alpha_;
    }
    // int_0^r C^{-m} p(s/C) s^{N-1} ds
    const double q = r / rc;
    const double poly = c0_ * std::pow(q, n) / n + c1_ * std::pow(q, n + 2) / (n + 2) +
                        c2_ * std::pow(q, n + 4) / (n + 4);
    return normalizer_ * area * std::pow(rc, n - m) * poly;
  }
  const QuadratureRule rule = composite_legendre(0.0, r, std::max(1, static_cast<int>(std::ceil(r))), 24);
  const double integral = rule.apply([&](double s) { return shape(s) * std::pow(s, dim_ - 1); });
  return normalizer_ * area * integral;
}

EquilibriumSpec make_heavy_tail_family(double alpha, int dim) {
  check_domain(alpha, dim);
  EquilibriumSpec spec;
  spec.dim_ = dim;
  spec.alpha_ = alpha;
  spec.family_ = TailFamily::generalized_cauchy;
  // int (1 + |v|^2)^{-(N+alpha)/2} dv = pi^{N/2} Gamma(alpha/2) / Gamma((N+alpha)/2)
  spec.normalizer_ = std::tgamma(0.5 * (dim + alpha)) /
                     (std::pow(std::numbers::pi, 0.5 * dim) * std::tgamma(0.5 * alpha));
  return spec;
}

EquilibriumSpec make_exact_tail_family(double alpha, int dim, double core_radius) {
  check_domain(alpha, dim);
  if (!(core_radius > 0.0)) throw std::domain_error("core radius must be positive");
  EquilibriumSpec spec;
  spec.dim_ = dim;
  spec.alpha_ = alpha;
  spec.family_ = TailFamily::exact_tail;
  spec.core_radius_ = core_radius;
  // p(1) = 1, p'(1) = -m, p''(1) = m (m + 1): C^2 match to s^{-m} at s = 1.
  const double m = dim + alpha;
  spec.c2_ = m * (m + 2.0) / 8.0;
  spec.c1_ = -0.5 * m - 0.25 * m * (m + 2.0);
  spec.c0_ = 1.0 - spec.c1_ - spec.c2_;
  const double n = dim;
  const double core = spec.c0_ / n + spec.c1_ / (n + 2.0) + spec.c2_ / (n + 4.0);
  const double total = unit_sphere_area(dim) * std::pow(core_radius, -alpha) * (core + 1.0 / alpha);
  spec.normalizer_ = 1.0 / total;
  return spec;
}

double tail_constant(const EquilibriumSpec& spec) { return spec.kappa0(); }

std::string to_string(CollisionProfile profile) {
  switch (profile) {
    case CollisionProfile::uniform: return "uniform";
    case CollisionProfile::smooth_nu0: return "smooth_nu0";
    case CollisionProfile::velocity_blend: return "velocity_blend";
  }
  return "unknown";
}

CollisionProfile collision_profile_from_string(const std::string& name) {
  if (name == "uniform" || name == "a") return CollisionProfile::uniform;
  if (name == "smooth_nu0" || name == "b") return CollisionProfile::smooth_nu0;
  if (name == "velocity_blend" || name == "c") return CollisionProfile::velocity_blend;
  throw std::invalid_argument("unknown collision profile '" + name + "'");
}

CollisionModel::CollisionModel(const CollisionParams& params, const EquilibriumSpec& spec)
    : params_(params), spec_(spec) {
  if (spec.dim() != 1) {
    throw std::invalid_argument("CollisionModel: only one velocity dimension is supported");
  }
  if (!(params.nu1 > 0.0 && params.nu1 <= params.nu2)) {
    throw std::invalid_argument("CollisionModel: need 0 < nu1 <= nu2");
  }
  if (params.profile == CollisionProfile::uniform) params_.amplitude = 0.0;
  if (std::abs(params_.amplitude) >= 1.0) {
    throw std::invalid_argument("CollisionModel: |a| must be below 1");
  }

  if (params_.profile == CollisionProfile::velocity_blend) {
    const double c = params_.blend_radius;
    if (!(c > 0.0)) throw std::invalid_argument("CollisionModel: blend radius must be positive");
    // Split at the equilibrium core radius so the quadrature never straddles its C^2 seam.
    std::vector<double> breaks{0.0};
    if (spec.core_radius() > 0.0 && spec.core_radius() < c) breaks.push_back(spec.core_radius());
    breaks.push_back(c);
    auto bump = [c](double v) {
      const double s = 1.0 - (v / c) * (v / c);
      return s > 0.0 ? s * s * s * s : 0.0;
    };
    auto half_line = [&](auto&& g) {
      double sum = 0.0;
      for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        sum += gauss_legendre(48, breaks[p], breaks[p + 1]).apply(g);
      }
      return 2.0 * sum;  // even integrands
    };
    const double m0 = half_line([&](double v) { return bump(v) * spec(v); });
    const double m2 = half_line([&](double v) { return bump(v) * v * v * spec(v); });
    blend_center_ = m2 / m0;
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i <= 4000; ++i) {
      const double v = c * i / 4000.0;
      const double p = bump(v) * (v * v - blend_center_);
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    blend_scale_ = 1.0 / std::max(std::abs(lo), std::abs(hi));
    blend_min_ = lo * blend_scale_;
    blend_max_ = hi * blend_scale_;
    blend_mean_ = half_line([&](double v) { return blend(v) * spec(v); });
  }

  const double a = std::abs(params_.amplitude);
  const double beta = params_.profile == CollisionProfile::velocity_blend ? params_.blend_strength : 0.0;
  const double nu0_lo = 1.0 - a, nu0_hi = 1.0 + a;
  const double b_lo = nu0_lo * (1.0 + 2.0 * std::min(beta * blend_min_, beta * blend_max_));
  const double b_hi = nu0_hi * (1.0 + 2.0 * std::max(beta * blend_min_, beta * blend_max_));
  const double m_lo = 1.0 + beta * blend_mean_ + std::min(beta * blend_min_, beta * blend_max_);
  const double m_hi = 1.0 + beta * blend_mean_ + std::max(beta * blend_min_, beta * blend_max_);
  const double tol = 1e-12;
  if (nu0_lo < params.nu1 - tol || nu0_hi > params.nu2 + tol || b_lo < params.nu1 - tol ||
      b_hi > params.nu2 + tol || nu0_lo * m_lo < params.nu1 - tol ||
      nu0_hi * m_hi > params.nu2 + tol) {
    std::ostringstream os;
    os << "CollisionModel: bounds violated for profile " << to_string(params_.profile)
       << " (b in [" << b_lo << ", " << b_hi << "], nu0 in [" << nu0_lo << ", " << nu0_hi
       << "], required [" << params.nu1 << ", " << params.nu2 << "])";
    throw std::invalid_argument(os.str());
  }
  grad_bound_ = a * m_hi;
}

double CollisionModel::nu0(double x) const { return 1.0 + params_.amplitude * std::cos(x); }

double CollisionModel::nu0_integral(double a, double b) const {
  return (b - a) + params_.amplitude * (std::sin(b) - std::sin(a));
}

namespace {

double sinc(double z) {
  if (std::abs(z) < 1e-4) return 1.0 - z * z / 6.0;
  return std::sin(z) / z;
}

}  // namespace

double CollisionModel::ray_integral(double x, double w, double z) const {
  const double half = 0.5 * w * z;
  return z * (1.0 + params_.amplitude * std::cos(x + half) * sinc(half));
}

double CollisionModel::segment_mean(double x, double y) const {
  return 1.0 + params_.amplitude * std::cos(0.5 * (x + y)) * sinc(0.5 * (y - x));
}

double CollisionModel::velocity_factor_min() const {
  if (params_.profile != CollisionProfile::velocity_blend) return 1.0;
  const double beta = params_.blend_strength;
  return 1.0 + beta * blend_mean_ + std::min(beta * blend_min_, beta * blend_max_);
}

double CollisionModel::velocity_factor_max() const {
  if (params_.profile != CollisionProfile::velocity_blend) return 1.0;
  const double beta = params_.blend_strength;
  return 1.0 + beta * blend_mean_ + std::max(beta * blend_min_, beta * blend_max_);
}

double CollisionModel::blend(double v) const {
  if (params_.profile != CollisionProfile::velocity_blend) return 0.0;
  const double c = params_.blend_radius;
  const double s = 1.0 - (v / c) * (v / c);
  if (s <= 0.0) return 0.0;
  return blend_scale_ * s * s * s * s * (v * v - blend_center_);
}

double CollisionModel::velocity_factor(double v) const {
  if (params_.profile != CollisionProfile::velocity_blend) return 1.0;
  return 1.0 + params_.blend_strength * (blend_mean_ + blend(v));
}

double CollisionModel::kernel(double x, double v, double vp) const {
  if (params_.profile != CollisionProfile::velocity_blend) return nu0(x);
  return nu0(x) * (1.0 + params_.blend_strength * (blend(v) + blend(vp)));
}

CollisionModel make_collision_model(const CollisionParams& params, const EquilibriumSpec& spec) {
  return CollisionModel(params, spec);
}

}  // namespace fraclimit
