#include <catch_amalgamated.hpp>

#include <cmath>

#include "kdvlab/error.hpp"
#include "kdvlab/kdv.hpp"
#include "kdvlab/multiscale.hpp"

using namespace kdvlab;
using namespace kdvlab::multiscale;
using Catch::Approx;

namespace {

constexpr double kAlpha = 0.00697;
constexpr double kC0 = 0.5;

ProfileParams params(Domain d, double alpha = kAlpha) {
  ProfileParams pp;
  pp.alpha = alpha;
  pp.domain = d;
  return pp;
}

double integral(const RealField& f) {
  double s = 0.0;
  for (double v : f.values) s += v;
  return s * f.grid.spacing();
}

double ratio(const schemes::Scheme& s, double c, const ProfileParams& pp) {
  return solvability_rhs(s, c, pp) / slow_lhs_derivative(c, pp);
}

const auto kSbdf1 = schemes::scheme_by_name("sbdf1");
const auto kSbdf2 = schemes::scheme_by_name("sbdf2");
const auto kRk222 = schemes::scheme_by_name("rk222");
const auto kRk443 = schemes::scheme_by_name("rk443");

}  // namespace

TEST_CASE("slow orders and forms") {
  CHECK(slow_order(kSbdf1) == 1);
  CHECK(slow_order(kSbdf2) == 3);
  CHECK(slow_order(kRk222) == 3);
  CHECK(slow_order(kRk443) == 3);
  CHECK(solvability_form(kSbdf1).m == 1);
  CHECK(solvability_form(kSbdf2).m == 3);
  try {
    solvability_form(kRk222);
    FAIL("expected NotAvailable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAvailable);
  }
  CHECK(epsilon(0.00324, kAlpha, kC0) == Approx(3.89e-3).epsilon(1e-3));
}

TEST_CASE("leading-order profile") {
  const auto pp = params(Domain::Finite);
  CHECK(pedestal(kC0, pp) == 0.0);
  const Grid xi(10.0, 512);
  const auto u = u0_profile(xi, kC0, pp);
  const auto sol = kdv::soliton_field(xi, kdv::SolitonParams{}, 0.0);
  for (size_t j = 0; j < u.values.size(); ++j) CHECK(u.values[j] == Approx(sol.values[j]).margin(1e-15));

  const Grid fine(10.0, 8192);
  const double m0 = integral(u0_profile(fine, kC0, pp));
  for (double c : {0.7, 1.3, 2.0}) CHECK(integral(u0_profile(fine, c, pp)) == Approx(m0).epsilon(1e-12));
  CHECK(pedestal(4 * kC0, pp) < 0.0);
  CHECK(pedestal(4 * kC0, params(Domain::Infinite)) == 0.0);
}

TEST_CASE("g functional") {
  const Grid xi(10.0, 4096);
  for (const auto& pp : {params(Domain::Finite), params(Domain::Infinite)}) {
    for (const auto& s : {kSbdf1, kSbdf2}) {
      const auto u = u0_profile(xi, 0.8, pp);
      CHECK(std::abs(integral(g_functional(s, u, 0.8, pp))) < 1e-9);
    }
  }
  CHECK(std::abs(solvability_rhs(kSbdf2, kC0, params(Domain::Finite))) > 1e-3);
}

TEST_CASE("parity kills the odd-derivative integrands") {
  const auto pp = params(Domain::Finite);
  for (int m : {0, 2}) {
    const SolvabilityForm odd{m, 1.0, 1.0};
    CHECK(std::abs(solvability_rhs(odd, 0.7, pp)) < 1e-10);
  }
}

TEST_CASE("thin-soliton coefficient ratios") {
  const auto pp = params(Domain::Infinite);
  const double t0 = tau0(kAlpha, kC0);
  const double r1 = ratio(kSbdf1, kC0, pp) / (t0 / kAlpha * std::pow(kC0, 4));
  const double r2 = ratio(kSbdf2, kC0, pp) / (std::pow(t0, 3) / (kAlpha * kAlpha) * std::pow(kC0, 7));
  CHECK(r1 == Approx(34.0 / 105.0).epsilon(1e-6));
  CHECK(r2 == Approx(43.0 / 105.0).epsilon(1e-6));

  // the finite-domain pedestal moves the ratio by a few percent at L = 10
  const auto fp = params(Domain::Finite);
  const double f1 = ratio(kSbdf1, kC0, fp) / (t0 / kAlpha * std::pow(kC0, 4));
  CHECK(f1 / r1 - 1.0 > 0.01);
  CHECK(f1 / r1 - 1.0 < 0.10);
}

TEST_CASE("quadrature convergence") {
  auto pp = params(Domain::Finite);
  const double a = solvability_rhs(kSbdf1, kC0, pp);
  pp.quadrature = 8192;
  CHECK(solvability_rhs(kSbdf1, kC0, pp) == Approx(a).epsilon(1e-12));
}

TEST_CASE("slow energy derivative") {
  const auto inf = params(Domain::Infinite);
  CHECK(slow_lhs_derivative(kC0, inf) == Approx(18.0 * std::sqrt(kC0 * kAlpha)).epsilon(1e-6));
  const auto fin = params(Domain::Finite);
  for (double c = kC0; c <= 8 * kC0; c += 0.25) CHECK(slow_lhs_derivative(c, fin) > 0.0);
  CHECK(slow_lhs_derivative(0.9, fin, 5e-4) == Approx(slow_lhs_derivative(0.9, fin, 1e-3)).epsilon(1e-8));
}

TEST_CASE("closed forms") {
  CHECK(closed_form_endpoint(kSbdf1, kAlpha, 0.00324, kC0) == Approx(17.717).epsilon(1e-4));
  CHECK(closed_form_endpoint(kSbdf2, kAlpha, 0.00324, kC0) == Approx(3.7203e4).epsilon(1e-4));
  CHECK(closed_form_endpoint(kRk222, kAlpha, 0.00324, kC0) == Approx(5.758e4).epsilon(1e-4));
  CHECK(closed_form_endpoint(kRk443, kAlpha, 0.00609, kC0) == Approx(2.8115e3).epsilon(1e-4));

  const double t_sbdf2 = (35.0 / 86.0) * std::pow(kC0, -6) * kAlpha * kAlpha / std::pow(0.00324, 3);
  CHECK(closed_form_endpoint(kSbdf2, kAlpha, 0.00324, kC0) == Approx(t_sbdf2).epsilon(1e-13));
  const double t_rk443 =
      (std::pow(0.9, -4) - 1.0) * 30030.0 / 77069.0 * std::pow(kC0, -6) * kAlpha * kAlpha / std::pow(0.00609, 3);
  CHECK(closed_form_endpoint(kRk443, kAlpha, 0.00609, kC0) == Approx(t_rk443).epsilon(1e-13));

  for (const auto& s : {kSbdf1, kSbdf2, kRk222, kRk443}) CHECK(closed_form_c(s, 0.0, kAlpha, 0.00324, kC0) == kC0);
  const double t = 10.0;
  const double c_sbdf1 = std::pow(std::pow(kC0, -3) - 34.0 / 35.0 * 0.00324 / kAlpha * t, -1.0 / 3.0);
  CHECK(closed_form_c(kSbdf1, t, kAlpha, 0.00324, kC0) == Approx(c_sbdf1).epsilon(1e-13));
  CHECK(closed_form_endpoint(kSbdf1, kAlpha, 0.00324, kC0) ==
        Approx(35.0 / 34.0 * std::pow(kC0, -3) * kAlpha / 0.00324).epsilon(1e-13));
  CHECK_THROWS_AS(closed_form_c(kSbdf1, 20.0, kAlpha, 0.00324, kC0), Error);
}

TEST_CASE("slow ODE integration") {
  for (const auto& s : {kSbdf1, kSbdf2}) {
    const auto num = integrate_quadrature_ode(s, kAlpha, 0.00324, kC0, 10.0, Domain::Infinite);
    CHECK(num.endpoint_time == Approx(closed_form_endpoint(s, kAlpha, 0.00324, kC0)).epsilon(1e-8));
  }
  const auto fin = integrate_slow_ode(kSbdf2, kAlpha, 0.00324, kC0, 10.0, Domain::Finite);
  const auto inf = integrate_slow_ode(kSbdf2, kAlpha, 0.00324, kC0, 10.0, Domain::Infinite);
  CHECK(fin.endpoint == EndpointKind::Blowup);
  CHECK(std::abs(fin.endpoint_time - 36771.441) / 36771.441 < 0.015);
  CHECK(std::abs(fin.endpoint_time - 36771.441) < std::abs(inf.endpoint_time - 36771.441));
  CHECK_THROWS_AS(integrate_slow_ode(kRk222, kAlpha, 0.00324, kC0, 10.0, Domain::Finite), Error);

  const auto rk = integrate_slow_ode(kRk443, kAlpha, 0.00609, kC0, 10.0, Domain::Infinite);
  CHECK(rk.endpoint == EndpointKind::Decay);
  CHECK(rk.fraction == 0.9);
  CHECK(rk.c_at(rk.endpoint_time) == Approx(kC0 * std::pow(0.9, 2.0 / 3.0)).epsilon(1e-8));
}

TEST_CASE("finite-domain endpoint approaches the thin-soliton limit") {
  double previous = 1.0;
  for (double alpha : {0.02, 0.01, 0.005, 0.0025}) {
    const double dt = 0.00324;
    const double fin = integrate_slow_ode(kSbdf1, alpha, dt, kC0, 10.0, Domain::Finite).endpoint_time;
    const double inf = integrate_slow_ode(kSbdf1, alpha, dt, kC0, 10.0, Domain::Infinite).endpoint_time;
    const double gap = std::abs(fin - inf) / inf;
    INFO("alpha " << alpha << " gap " << gap);
    CHECK(gap < previous);
    previous = gap;
  }
}

TEST_CASE("timestep enters only through the time map") {
  const double a = integrate_slow_ode(kSbdf1, kAlpha, 0.004, kC0, 10.0, Domain::Finite).endpoint_time;
  const double b = integrate_slow_ode(kSbdf1, kAlpha, 0.002, kC0, 10.0, Domain::Finite).endpoint_time;
  CHECK(b / a == Approx(2.0).epsilon(1e-9));
  const double c = integrate_slow_ode(kSbdf2, kAlpha, 0.004, kC0, 10.0, Domain::Finite).endpoint_time;
  const double d = integrate_slow_ode(kSbdf2, kAlpha, 0.002, kC0, 10.0, Domain::Finite).endpoint_time;
  CHECK(d / c == Approx(8.0).epsilon(1e-9));
}

TEST_CASE("predicted norms") {
  const auto p1 = integrate_slow_ode(kSbdf1, kAlpha, 0.00324, kC0, 10.0, Domain::Finite);
  CHECK(predicted_l2(p1, 0.0) == Approx(0.841669).margin(1e-6));
  for (const auto& s : {kSbdf1, kSbdf2, kRk222, kRk443}) {
    const auto dom = s.index() == 0 ? Domain::Finite : Domain::Infinite;
    const auto pr = integrate_slow_ode(s, kAlpha, 0.00324, kC0, 10.0, dom);
    const bool grows = schemes::name_of(s) != "rk443";
    double prev = predicted_l2(pr, 0.0);
    for (int i = 1; i <= 10; ++i) {
      const double v = predicted_l2(pr, 0.09 * i * pr.endpoint_time);
      INFO(pr.scheme << " sample " << i);
      if (grows) {
        CHECK(v > prev);
      } else {
        CHECK(v < prev);
      }
      prev = v;
    }
  }
}
