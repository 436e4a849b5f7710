#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "kdvlab/diagnostics.hpp"
#include "kdvlab/error.hpp"

using namespace kdvlab;
using namespace kdvlab::diagnostics;
using Catch::Approx;

namespace {

const spectral::Grid kGrid(10.0, 512);

RealField shifted_soliton(double shift) {
  SolitonParams p;
  p.x0 = shift;
  return kdv::soliton_field(kGrid, p, 0.0);
}

}  // namespace

TEST_CASE("error against the exact soliton") {
  const SolitonParams p;
  CHECK(error_vs_exact(kdv::soliton_field(kGrid, p, 1.3), 1.3, p) < 1e-13);
  for (double shift : {-10.0, 0.0, 10.0, 20.0}) {
    CHECK(error_vs_exact(shifted_soliton(shift), 0.0, p) < 1e-12);
  }
  const double norm = spectral::l2_norm(kdv::soliton_field(kGrid, p, 0.0));
  CHECK(error_vs_exact(shifted_soliton(5.0), 0.0, p) == Approx(std::sqrt(2.0) * norm).epsilon(1e-10));
  CHECK(std::sqrt(2.0) * norm == Approx(1.1903).margin(1e-4));
}

TEST_CASE("growth-rate fits") {
  std::vector<double> t, v, flat;
  for (int i = 0; i <= 100; ++i) {
    t.push_back(0.1 * i);
    v.push_back(2.0 * std::exp(0.3 * t.back()));
    flat.push_back(4.0);
  }
  CHECK(fit_growth_rate(t, v, 0.0, 10.0) == Approx(0.3).margin(1e-10));
  CHECK(std::abs(fit_growth_rate(t, flat, 0.0, 10.0)) < 1e-14);
  CHECK_THROWS_AS(fit_growth_rate(t, v, 0.0, 0.5), Error);  // too few samples

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> noise(-0.01, 0.01);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> noisy = v;
    for (auto& x : noisy) x *= 1.0 + noise(rng);
    CHECK(fit_growth_rate(t, noisy, 0.0, 10.0) == Approx(0.3).epsilon(0.02));
  }
  auto bad = v;
  bad[5] = -1.0;
  CHECK_THROWS_AS(fit_growth_rate(t, bad, 0.0, 10.0), Error);
}

TEST_CASE("growth window spans the middle decades of the error") {
  ErrorSeries s;
  for (int i = 0; i <= 200; ++i) {
    s.times.push_back(0.01 * i);
    s.l2_errors.push_back(1e-6 * std::exp(10.0 * s.times.back()));
  }
  const auto [lo, hi] = growth_window(s, 0.02, 1.0);
  CHECK(lo == Approx(std::log(1e3) / 10.0).margin(0.011));
  CHECK(hi == Approx(std::log(1e5) / 10.0).margin(0.011));
  CHECK(fit_growth_rate(s, lo, hi) == Approx(10.0).epsilon(1e-10));
}

TEST_CASE("nonlinear error term") {
  const SolitonParams p;
  const auto exact = kdv::soliton_field(kGrid, p, 0.5);
  CHECK(nonlinear_term_norm(exact, 0.5, p) < 1e-20);

  auto perturbed = exact;
  auto doubled = exact;
  for (int j = 0; j < kGrid.size(); ++j) {
    const double v = 1e-3 * std::sin(2 * std::numbers::pi * 3 * kGrid.point(j) / 10.0);
    perturbed.values[static_cast<size_t>(j)] += v;
    doubled.values[static_cast<size_t>(j)] += 2 * v;
  }
  CHECK(nonlinear_term_norm(doubled, 0.5, p) == Approx(4.0 * nonlinear_term_norm(perturbed, 0.5, p)).epsilon(1e-8));
}

TEST_CASE("intermediate norms interpolate the trace") {
  kdv::SimulationTrace tr;
  tr.times = {0.0, 1.0, 2.0};
  tr.l2_norms = {1.0, 3.0, 5.0};
  CHECK(intermediate_l2(tr, 0.0, 2.0) == 1.0);
  CHECK(intermediate_l2(tr, 0.25, 2.0) == Approx(2.0));
  CHECK(intermediate_l2(tr, 1.0, 2.0) == 5.0);
  CHECK_THROWS_AS(intermediate_l2(tr, 1.5, 2.0), Error);
}

TEST_CASE("error series requires tracking") {
  kdv::SimulationConfig c;
  c.grid = spectral::Grid(10.0, 128);
  c.dt = 0.01;
  c.t_max = 0.1;
  CHECK_THROWS_AS(error_series(kdv::run(c), c.soliton), Error);
  c.track_error = true;
  c.sample_every = 1;
  const auto s = error_series(kdv::run(c), c.soliton);
  CHECK(s.times.size() == 11);
  CHECK(s.amplitude_ratios.front() == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("peak skewness") {
  const SolitonParams p;
  CHECK(std::abs(peak_skewness(kdv::soliton_field(kGrid, p, 0.0))) < 1e-10);
  CHECK(std::abs(peak_skewness(shifted_soliton(4.9))) < 1e-10);
  // a uniform background must not bias the grid point opposite the peak
  auto lifted = kdv::soliton_field(spectral::Grid(10.0, 128), p, 0.0);
  for (auto& v : lifted.values) v += 1e-4;
  CHECK(std::abs(peak_skewness(lifted)) < 1e-12);

  // mixture of Gaussians with sigma = 0.1 at 0 and 0.5, masses 2:1
  const spectral::Grid g(10.0, 1024);
  auto gauss = [](double x, double mu) { return std::exp(-0.5 * (x - mu) * (x - mu) / 0.01); };
  const auto mix = RealField::sample(g, [&](double x) { return gauss(x, 0.0) + 0.5 * gauss(x, 0.5); });
  const double pw = 2.0 / 3.0, qw = 1.0 / 3.0, d = 0.5;
  const double var = 0.01 + pw * qw * d * d;
  const double third = pw * std::pow(-qw * d, 3) + qw * std::pow(pw * d, 3);
  CHECK(peak_skewness(mix) == Approx(third / std::pow(var, 1.5)).epsilon(1e-6));
  const auto mirrored = RealField::sample(g, [&](double x) { return gauss(x, 0.0) + 0.5 * gauss(x, -0.5); });
  CHECK(peak_skewness(mirrored) == Approx(-peak_skewness(mix)).epsilon(1e-9));
}
