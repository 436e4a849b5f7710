#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "kdvlab/error.hpp"
#include "kdvlab/regions.hpp"

using namespace kdvlab;
using namespace kdvlab::regions;
using Catch::Approx;

namespace {
const char* kAll[] = {"sbdf1", "sbdf2", "sbdf3", "sbdf4", "rk222", "rk443"};
constexpr Complex I{0.0, 1.0};
}  // namespace

TEST_CASE("every scheme is neutral at the origin") {
  for (const char* name : kAll) {
    CHECK(amplification(schemes::scheme_by_name(name), {0.0, 0.0}) == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("SBDF1 scalar formula") {
  const auto s = schemes::sbdf(1);
  CHECK(sbdf_amplification(s, {I, 0.0}) == Approx(0.70711).margin(5e-6));
  CHECK(sbdf_amplification(s, {0.0, I}) == Approx(1.41421).margin(5e-6));
  const ImexTestPoint pt{Complex(-0.3, 0.8), Complex(0.1, -0.4)};
  CHECK(sbdf_amplification(s, pt) == Approx(std::abs((1.0 + pt.z_ex) / (1.0 - pt.z_im))).epsilon(1e-14));
}

TEST_CASE("SBDF roots satisfy the characteristic polynomial") {
  for (int order = 1; order <= 4; ++order) {
    const auto s = schemes::sbdf(order);
    const ImexTestPoint pt{Complex(0.0, 0.7), Complex(0.0, -0.3)};
    const auto roots = sbdf_roots(s, pt);
    CHECK(roots.size() == static_cast<size_t>(order));
    for (const auto& r : roots) {
      Complex poly = (s.a.back() - pt.z_im) * std::pow(r, order);
      for (int i = 0; i < order; ++i) poly += (s.a[static_cast<size_t>(i)] - pt.z_ex * s.beta[static_cast<size_t>(i)]) * std::pow(r, i);
      CHECK(std::abs(poly) < 1e-12);
    }
  }
  // a_s - z_im = 0 removes the leading coefficient
  CHECK_THROWS_AS(sbdf_roots(schemes::sbdf(2), {Complex(1.5, 0.0), 0.0}), Error);
}

TEST_CASE("RK stability function") {
  const auto r2 = schemes::rk("RK222");
  CHECK(rk_amplification(r2, {0.0, 0.0}) == Approx(1.0).epsilon(1e-15));
  for (const char* name : {"RK222", "RK443"}) {
    const double big = rk_amplification(schemes::rk(name), {Complex(-1e6, 0.0), 0.0});
    CHECK(big < 1.0);
  }
  const Complex zi{0.0, 1e-4}, ze{0.0, -3e-4};
  const Complex r = schemes::rk_update_factor(r2, zi, ze);
  CHECK(std::abs(r - (1.0 + zi + ze)) < 1e-7);
  CHECK(std::abs(r - (1.0 + zi + ze)) > 1e-10);  // the second-order term is present
}

TEST_CASE("KdV test point") {
  const auto pt = kdv_test_point(2.0, 0.01, 1.5, 0.1);
  CHECK(pt.z_im == Complex(0.0, 0.1 * 0.01 * 8.0));
  CHECK(pt.z_ex == Complex(0.0, -1.5 * 2.0 * 0.1));
}

TEST_CASE("SBDF3 is unstable arbitrarily close to the origin") {
  const auto s = schemes::scheme_by_name("sbdf3");
  for (double scale : {1e-1, 1e-2, 1e-3}) {
    bool unstable = false;
    for (double a : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      if (amplification(s, {I * scale, -I * scale * a}) > 1.0 + 1e-14) unstable = true;
    }
    INFO("scale " << scale);
    CHECK(unstable);
  }
}

TEST_CASE("implicit dispersion stabilises small scales") {
  const auto s = schemes::scheme_by_name("sbdf1");
  for (double zex : {0.5, 1.0, 2.0}) {
    CHECK(amplification(s, {I * 100.0, -I * zex}) < 1.0);
  }
  CHECK(amplification(s, {I * 0.1, -I * 1.0}) > 1.0);
}

TEST_CASE("rasters are symmetric under a joint sign flip") {
  const auto axis = linspace(-3.0, 3.0, 31);
  for (const char* name : kAll) {
    const auto r = region_scan(schemes::scheme_by_name(name), axis, axis);
    const size_t n = axis.size();
    for (size_t row = 0; row < n; ++row) {
      for (size_t col = 0; col < n; ++col) {
        const auto a = r.at(row, col);
        const auto b = r.at(n - 1 - row, n - 1 - col);
        REQUIRE(a.has_value() == b.has_value());
        if (a) CHECK(*a == Approx(*b).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("raster layout") {
  const auto zim = linspace(-1.0, 1.0, 5);
  const auto zex = linspace(-2.0, 2.0, 3);
  CHECK(zim[2] == 0.0);
  CHECK(zex.back() == 2.0);
  const auto r = region_scan(schemes::sbdf(1), zim, zex);
  REQUIRE(r.max_sigma.size() == 15);
  CHECK(*r.at(1, 2) == Approx(1.0));
  CHECK(*r.at(2, 4) == Approx(sbdf_amplification(schemes::sbdf(1), {I * 1.0, I * 2.0})));
  CHECK(linspace(0.5, 1.0, 1) == std::vector<double>{0.5});
  CHECK_THROWS_AS(linspace(0.0, 1.0, 0), Error);
}

TEST_CASE("large-scale threshold u0 = (2 pi / L)^2 alpha for k = 1") {
  // dt is large so that |sigma| - 1 stands clear of rounding near the origin
  const double L = 10.0, alpha = 0.00697, dt = 10.0;
  const double k = 2 * std::numbers::pi / L;
  const double u_crit = k * k * alpha;
  auto excess = [&](const char* name, double u0) {
    return amplification(schemes::scheme_by_name(name), kdv_test_point(k, alpha, u0, dt)) - 1.0;
  };
  for (const char* name : {"sbdf1", "sbdf2", "rk222"}) {
    INFO(name);
    CHECK(excess(name, 0.9 * u_crit) < 0.0);
    CHECK(excess(name, 1.1 * u_crit) > 0.0);
  }
  // RK443 changes stability at the same point but the other way round
  CHECK(excess("rk443", 0.9 * u_crit) > 0.0);
  CHECK(excess("rk443", 1.1 * u_crit) < 0.0);
  CHECK(std::abs(excess("sbdf1", u_crit)) < 1e-14);
}
