#include "fraclimit/equilibria.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace fraclimit;

namespace {

template <typename F>
double simpson(F&& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

// int_R F dv for an even one-dimensional density: v = tan(theta) on [0, pi/2).
template <typename Spec>
double mass_1d(const Spec& F) {
  return 2.0 * simpson([&](double th) {
    if (th >= std::numbers::pi / 2) return 0.0;
    const double c = std::cos(th);
    return F(std::tan(th)) / (c * c);
  }, 0.0, std::numbers::pi / 2, 400000);
}

}  // namespace

TEST_CASE("Cauchy member values") {
  const EquilibriumSpec F = make_heavy_tail_family(1.0, 1);
  CHECK(F(0.0) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-15));
  CHECK(100.0 * 100.0 * F(100.0) == doctest::Approx(1e4 / (1e4 + 1.0) / std::numbers::pi).epsilon(1e-14));
  CHECK(F.kappa0() == doctest::Approx(1.0 / std::numbers::pi));
}

TEST_CASE("heavy-tail family has unit mass") {
  for (double a : {0.5, 1.0, 1.5}) {
    const EquilibriumSpec F = make_heavy_tail_family(a, 1);
    CHECK(mass_1d(F) == doctest::Approx(1.0).epsilon(a < 1 ? 2e-3 : 1e-6));
    CHECK(F.core_mass(3.0) == doctest::Approx(2.0 * simpson([&](double v) { return F(v); }, 0.0, 3.0, 20000)).epsilon(1e-10));
  }
}

TEST_CASE("heavy-tail family in two dimensions") {
  const EquilibriumSpec F = make_heavy_tail_family(1.0, 2);
  // radial integral 2 pi int_0^inf F(r) r dr with r = tan(theta)
  const double mass = 2.0 * std::numbers::pi * simpson([&](double th) {
    if (th >= std::numbers::pi / 2) return 0.0;
    const double c = std::cos(th), r = std::tan(th);
    return F.radial(r) * r / (c * c);
  }, 0.0, std::numbers::pi / 2, 400000);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("exact-tail family: unit mass, exact power tail, C2 seam") {
  for (double a : {0.5, 1.0, 1.5}) {
    const EquilibriumSpec F = make_exact_tail_family(a, 1, 1.0);
    const double core = 2.0 * simpson([&](double v) { return F(v); }, 0.0, 1.0, 20000);
    const double tail = 2.0 * F.kappa0() / a;
    CHECK(core + tail == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::pow(7.0, 1.0 + a) * F(7.0) == doctest::Approx(F.kappa0()).epsilon(1e-14));
    const double h = 1e-4;
    const auto d1 = [&](double r) { return (F.radial(r + h) - F.radial(r - h)) / (2 * h); };
    CHECK(F.radial(1.0 - 1e-12) == doctest::Approx(F.radial(1.0)).epsilon(1e-10));
    CHECK(d1(1.0 - 2 * h) == doctest::Approx(d1(1.0 + 2 * h)).epsilon(5e-3));
    const auto d2 = [&](double r) { return (F.radial(r + h) - 2 * F.radial(r) + F.radial(r - h)) / (h * h); };
    CHECK(d2(1.0 - 2 * h) == doctest::Approx(d2(1.0 + 2 * h)).epsilon(5e-3));
    CHECK(F.core_mass(0.6) == doctest::Approx(2.0 * simpson([&](double v) { return F(v); }, 0.0, 0.6, 20000)).epsilon(1e-12));
  }
}

TEST_CASE("exact-tail tail constant for r = 1, alpha = 1") {
  CHECK(make_exact_tail_family(1.0, 1, 1.0).kappa0() == doctest::Approx(0.15625).epsilon(1e-14));
}

TEST_CASE("sphere areas") {
  CHECK(unit_sphere_area(1) == doctest::Approx(2.0));
  CHECK(unit_sphere_area(2) == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(unit_sphere_area(3) == doctest::Approx(4.0 * std::numbers::pi));
}

TEST_CASE("domain checks") {
  CHECK_THROWS_AS(make_heavy_tail_family(2.0, 1), std::domain_error);
  CHECK_THROWS_AS(make_heavy_tail_family(0.0, 1), std::domain_error);
  CHECK_THROWS_AS(make_exact_tail_family(1.0, 1, 0.0), std::domain_error);
  CHECK(tail_family_from_string(to_string(TailFamily::exact_tail)) == TailFamily::exact_tail);
  CHECK_THROWS(tail_family_from_string("gaussian"));
  CHECK(collision_profile_from_string("b") == CollisionProfile::smooth_nu0);
}

TEST_CASE("collision model: closed forms against quadrature") {
  const EquilibriumSpec F = make_exact_tail_family(1.0);
  const CollisionModel m({CollisionProfile::smooth_nu0, 0.5}, F);
  CHECK(m.nu0(0.0) == doctest::Approx(1.5));
  const double x = 0.7, w = -1.3, z = 2.9;
  const double ray = simpson([&](double s) { return m.nu0(x + w * s); }, 0.0, z, 2000);
  CHECK(m.ray_integral(x, w, z) == doctest::Approx(ray).epsilon(1e-12));
  CHECK(m.ray_integral(x, 1e-12, z) == doctest::Approx(z * m.nu0(x)).epsilon(1e-10));
  const double y = 9.4;
  const double seg = simpson([&](double s) { return m.nu0((1 - s) * x + s * y); }, 0.0, 1.0, 2000);
  CHECK(m.segment_mean(x, y) == doctest::Approx(seg).epsilon(1e-12));
  CHECK(m.segment_mean(x, y) == doctest::Approx(m.segment_mean(y, x)).epsilon(1e-15));
  CHECK(m.segment_mean(x, x) == doctest::Approx(m.nu0(x)).epsilon(1e-15));
  CHECK(m.nu0_integral(0.0, 2 * std::numbers::pi) == doctest::Approx(2 * std::numbers::pi));
}

TEST_CASE("velocity blend keeps detailed balance and a zero-mean bump") {
  const EquilibriumSpec F = make_exact_tail_family(1.0);
  const CollisionModel m({CollisionProfile::velocity_blend, 0.5}, F);
  const double mean = 2.0 * (simpson([&](double v) { return m.blend(v) * F(v); }, 0.0, 1.0, 20000) +
                             simpson([&](double v) { return m.blend(v) * F(v); }, 1.0, 5.0, 20000));
  CHECK(std::abs(mean) < 1e-10);
  CHECK(std::abs(m.blend_mean()) < 1e-12);
  CHECK(m.blend(6.0) == 0.0);
  CHECK(m.kernel(0.3, 0.4, -2.0) == doctest::Approx(m.kernel(0.3, -2.0, 0.4)).epsilon(1e-15));
  // nu(x, v) = int b(x, v, v') F(v') dv'
  const double v = 0.8, xx = 1.1;
  const auto sym = [&](double vp) { return 0.5 * (m.kernel(xx, v, vp) + m.kernel(xx, v, -vp)) * F(vp); };
  // beyond |v'| = 5 the bump vanishes, so b is constant there and int F = 2 kappa0 / 5
  const double nu = 2.0 * (simpson(sym, 0.0, 1.0, 20000) + simpson(sym, 1.0, 5.0, 20000)) +
                    m.kernel(xx, v, 6.0) * 2.0 * F.kappa0() / 5.0;
  CHECK(nu == doctest::Approx(m.nu(xx, v)).epsilon(1e-9));
}

TEST_CASE("collision bounds are enforced") {
  const EquilibriumSpec F = make_exact_tail_family(1.0);
  CHECK_THROWS_AS(CollisionModel({CollisionProfile::smooth_nu0, 0.9}, F), std::invalid_argument);
  CHECK_THROWS_AS(CollisionModel({CollisionProfile::smooth_nu0, 0.5, 2.0, 1.0}, F), std::invalid_argument);
  CHECK_THROWS_AS(CollisionModel({}, make_exact_tail_family(1.0, 2)), std::invalid_argument);
  CHECK_NOTHROW(CollisionModel({CollisionProfile::uniform, 0.9}, F));
}

TEST_CASE("equilibria are even") {
  for (const EquilibriumSpec& F : {make_heavy_tail_family(0.4), make_exact_tail_family(1.7, 1, 2.0)}) {
    for (double v : {0.1, 0.99, 1.0, 2.5, 1e4}) CHECK(F(v) == F(-v));
  }
}

TEST_CASE("Cauchy tail is approached at v = 100") {
  const EquilibriumSpec F = make_heavy_tail_family(1.0);
  CHECK(100.0 * 100.0 * F(100.0) == doctest::Approx(0.318278).epsilon(1e-5));
  CHECK(std::abs(100.0 * 100.0 * F(100.0) - tail_constant(F)) < 1e-4);
  CHECK(tail_constant(F) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-15));
}

TEST_CASE("tail constant for alpha = 1.5 against a quadrature normalization") {
  const EquilibriumSpec F = make_heavy_tail_family(1.5);
  // int (1 + v^2)^{-5/4} dv with v = tan(theta): 2 int_0^{pi/2} cos(theta)^{1/2} dtheta
  const double norm = 2.0 * simpson([](double th) { return std::sqrt(std::max(0.0, std::cos(th))); },
                                    0.0, std::numbers::pi / 2, 2000000);
  CHECK(tail_constant(F) == doctest::Approx(1.0 / norm).epsilon(1e-7));
}

TEST_CASE("collision profiles") {
  const EquilibriumSpec F = make_exact_tail_family(1.0);
  const CollisionModel a({CollisionProfile::uniform}, F);
  for (double v : {-3.0, 0.2, 8.0}) {
    CHECK(a.sigma(0.5, v, 1.7) == doctest::Approx(F(v)).epsilon(1e-15));
    CHECK(a.nu(0.5, v) == 1.0);
  }
  const CollisionModel b0({CollisionProfile::smooth_nu0, 0.0}, F);
  for (double x : {0.0, 1.0, 4.0}) CHECK(b0.nu(x, 2.0) == 1.0);
  const CollisionModel b({CollisionProfile::smooth_nu0, 0.5}, F);
  CHECK(b.nu0_min() == 0.5);
  CHECK(b.nu0_max() == 1.5);
  double lo = 10.0, hi = 0.0;
  for (int i = 0; i < 1000; ++i) {
    lo = std::min(lo, b.nu0(2.0 * std::numbers::pi * i / 1000));
    hi = std::max(hi, b.nu0(2.0 * std::numbers::pi * i / 1000));
  }
  CHECK(lo == doctest::Approx(0.5));
  CHECK(hi == doctest::Approx(1.5));
}
