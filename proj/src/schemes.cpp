#include "kdvlab/schemes.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>

#include "kdvlab/error.hpp"

namespace kdvlab::schemes {

SbdfScheme sbdf(int order) {
  SbdfScheme s;
  s.steps = order;
  switch (order) {
    case 1:
      s.a = {-1.0, 1.0};
      s.beta = {1.0};
      break;
    case 2:
      s.a = {1.0 / 2.0, -2.0, 3.0 / 2.0};
      s.beta = {-1.0, 2.0};
      break;
    case 3:
      s.a = {-1.0 / 3.0, 3.0 / 2.0, -3.0, 11.0 / 6.0};
      s.beta = {1.0, -3.0, 3.0};
      break;
    case 4:
      s.a = {1.0 / 4.0, -4.0 / 3.0, 3.0, -4.0, 25.0 / 12.0};
      s.beta = {-1.0, 4.0, -6.0, 4.0};
      break;
    default:
      throw Error(ErrorKind::InvalidArgument, "SBDF order must be 1..4, got " + std::to_string(order));
  }
  s.gamma.assign(static_cast<size_t>(order + 1), 0.0);
  s.gamma.back() = 1.0;
  return s;
}

RkScheme rk(const std::string& name) {
  RkScheme s;
  if (name == "RK222") {
    // Ascher, Ruuth & Spiteri (1997), scheme (2.6).
    const double g = (2.0 - std::numbers::sqrt2) / 2.0;
    const double d = 1.0 - 1.0 / (2.0 * g);
    s.name = name;
    s.stages = 2;
    s.accuracy = 2;
    s.abscissae = {0.0, g, 1.0};
    s.explicit_tab = {{0.0, 0.0, 0.0}, {g, 0.0, 0.0}, {d, 1.0 - d, 0.0}};
    s.implicit_tab = {{0.0, 0.0, 0.0}, {0.0, g, 0.0}, {0.0, 1.0 - g, g}};
  } else if (name == "RK443") {
    // Ascher, Ruuth & Spiteri (1997), scheme (2.8).
    s.name = name;
    s.stages = 4;
    s.accuracy = 3;
    s.abscissae = {0.0, 1.0 / 2.0, 2.0 / 3.0, 1.0 / 2.0, 1.0};
    s.explicit_tab = {{0.0, 0.0, 0.0, 0.0, 0.0},
                      {1.0 / 2.0, 0.0, 0.0, 0.0, 0.0},
                      {11.0 / 18.0, 1.0 / 18.0, 0.0, 0.0, 0.0},
                      {5.0 / 6.0, -5.0 / 6.0, 1.0 / 2.0, 0.0, 0.0},
                      {1.0 / 4.0, 7.0 / 4.0, 3.0 / 4.0, -7.0 / 4.0, 0.0}};
    s.implicit_tab = {{0.0, 0.0, 0.0, 0.0, 0.0},
                      {0.0, 1.0 / 2.0, 0.0, 0.0, 0.0},
                      {0.0, 1.0 / 6.0, 1.0 / 2.0, 0.0, 0.0},
                      {0.0, -1.0 / 2.0, 1.0 / 2.0, 1.0 / 2.0, 0.0},
                      {0.0, 3.0 / 2.0, -3.0 / 2.0, 1.0 / 2.0, 1.0 / 2.0}};
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown RK scheme '" + name + "'");
  }
  return s;
}

Scheme scheme_by_name(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (lower.size() == 5 && lower.starts_with("sbdf") && lower[4] >= '1' && lower[4] <= '4') return sbdf(lower[4] - '0');
  if (lower == "rk222") return rk("RK222");
  if (lower == "rk443") return rk("RK443");
  throw Error(ErrorKind::InvalidArgument, "unknown scheme name '" + name + "'");
}

std::string name_of(const Scheme& scheme) {
  if (const auto* s = std::get_if<SbdfScheme>(&scheme)) return "sbdf" + std::to_string(s->steps);
  std::string n = std::get<RkScheme>(scheme).name;
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return n;
}

int order_of(const Scheme& scheme) {
  return std::visit([](const auto& s) { return s.order(); }, scheme);
}

Complex rk_update_factor(const RkScheme& scheme, Complex z_im, Complex z_ex) {
  const int q = scheme.stages;
  std::vector<Complex> y(static_cast<size_t>(q + 1));
  y[0] = 1.0;
  for (int i = 1; i <= q; ++i) {
    Complex rhs = 1.0;
    for (int j = 0; j < i; ++j) {
      rhs += (scheme.explicit_tab[i][j] * z_ex + scheme.implicit_tab[i][j] * z_im) * y[static_cast<size_t>(j)];
    }
    const Complex diag = 1.0 - scheme.implicit_tab[i][i] * z_im;
    require(std::abs(diag) > 0.0, ErrorKind::Numerical, "singular implicit stage factor");
    y[static_cast<size_t>(i)] = rhs / diag;
  }
  return y[static_cast<size_t>(q)];
}

Complex sbdf_step_from_exact_history(const SbdfScheme& scheme, Complex z_im, Complex z_ex) {
  const int s = scheme.steps;
  const Complex z = z_im + z_ex;
  Complex rhs = 0.0;
  for (int i = 0; i < s; ++i) {
    const Complex yi = std::exp(z * static_cast<double>(i));
    rhs += (-scheme.a[static_cast<size_t>(i)] + z_ex * scheme.beta[static_cast<size_t>(i)]) * yi;
  }
  return rhs / (scheme.a[static_cast<size_t>(s)] - z_im);
}

double one_step_error(const Scheme& scheme, Complex a_im, Complex a_ex, double dt) {
  const Complex z_im = a_im * dt;
  const Complex z_ex = a_ex * dt;
  if (const auto* s = std::get_if<SbdfScheme>(&scheme)) {
    const Complex exact = std::exp((z_im + z_ex) * static_cast<double>(s->steps));
    return std::abs(sbdf_step_from_exact_history(*s, z_im, z_ex) - exact);
  }
  const auto& r = std::get<RkScheme>(scheme);
  return std::abs(rk_update_factor(r, z_im, z_ex) - std::exp(z_im + z_ex));
}

namespace {

double consistency_residual(const Scheme& scheme) {
  if (const auto* s = std::get_if<SbdfScheme>(&scheme)) {
    double sum = 0.0;
    for (double a : s->a) sum += a;
    return std::abs(sum);
  }
  const auto& r = std::get<RkScheme>(scheme);
  double worst = std::abs(r.abscissae[0]);
  for (int i = 0; i <= r.stages; ++i) {
    double ex = 0.0, im = 0.0;
    for (int j = 0; j <= r.stages; ++j) {
      ex += r.explicit_tab[i][j];
      im += r.implicit_tab[i][j];
    }
    worst = std::max({worst, std::abs(ex - r.abscissae[i]), std::abs(im - r.abscissae[i])});
  }
  return worst;
}

}  // namespace

OrderReport verify_order_conditions(const Scheme& scheme, int samples) {
  OrderReport report;
  report.declared_order = order_of(scheme);
  report.max_consistency_residual = consistency_residual(scheme);
  const int local = report.declared_order + 1;

  // Errors below ~1e-13 are roundoff; start the ladder high enough for order 4.
  for (double dt = 1e-1; dt > 1e-4 * 0.99; dt /= 2.0) {
    if (std::pow(dt, local) < 1e-12) break;
    report.dts.push_back(dt);
  }

  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  report.observed_order = 1e300;
  for (int sample = 0; sample < samples; ++sample) {
    const Complex a_im(unit(rng), unit(rng));
    const Complex a_ex(unit(rng), unit(rng));
    // Least-squares slope of log(err) vs log(dt).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(report.dts.size());
    for (double dt : report.dts) {
      const double err = one_step_error(scheme, a_im, a_ex, dt);
      report.max_residual = std::max(report.max_residual, err / std::pow(dt, local));
      const double x = std::log(dt), y = std::log(std::max(err, 1e-300));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    report.observed_order = std::min(report.observed_order, slope);
  }
  return report;
}

}  // namespace kdvlab::schemes
