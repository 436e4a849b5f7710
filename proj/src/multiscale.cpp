#include "kdvlab/multiscale.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kdvlab/error.hpp"

namespace kdvlab::multiscale {

std::string to_string(Domain d) { return d == Domain::Finite ? "finite" : "infinite"; }
std::string to_string(EndpointKind k) { return k == EndpointKind::Blowup ? "blowup" : "decay"; }

SolvabilityForm solvability_form(const schemes::Scheme& scheme) {
  if (const auto* s = std::get_if<schemes::SbdfScheme>(&scheme)) {
    if (s->steps == 1) return {1, -0.5, 0.5};
    if (s->steps == 2) return {3, 0.25, -0.75};
  }
  throw Error(ErrorKind::NotAvailable, "finite-domain solvability functional for " + schemes::name_of(scheme) +
                                           " is not available (published only in supplemental material)");
}

int slow_order(const schemes::Scheme& scheme) {
  const std::string name = schemes::name_of(scheme);
  if (name == "sbdf1") return 1;
  if (name == "sbdf2" || name == "rk222" || name == "rk443") return 3;
  throw Error(ErrorKind::NotAvailable, "no multiple-scales prediction for " + name);
}

double tau0(double alpha, double c0) {
  return 2.0 * std::sqrt(4.0 * alpha / c0) * std::log(1.0 + std::numbers::sqrt2) / c0;
}

double epsilon(double dt, double alpha, double c0) { return dt / tau0(alpha, c0); }

namespace {

void check(double c, const ProfileParams& pp) {
  require(std::isfinite(c) && c > 0.0, ErrorKind::InvalidArgument, "c must be positive");
  require(pp.alpha > 0.0 && pp.c0 > 0.0 && pp.length > 0.0, ErrorKind::InvalidArgument,
          "alpha, c0 and L must be positive");
  require(pp.quadrature >= 8 && pp.quadrature % 2 == 0, ErrorKind::InvalidArgument,
          "quadrature size must be even and at least 8");
}

double integrate(const RealField& f) {
  double sum = 0.0;
  for (double v : f.values) sum += v;
  return sum * f.grid.spacing();
}

RealField derivative(const RealField& f, int order) {
  if (order == 0) return f;
  auto c = forward_transform(f);
  spectral::apply_derivative(f.grid, order, c.coeffs);
  return inverse_transform(c);
}

// Quadrature size: at least the requested size and 16 points per soliton width.
Grid quadrature_grid(double c, const ProfileParams& pp) {
  int m = pp.quadrature;
  const double width = std::sqrt(4.0 * pp.alpha / c);
  while (pp.length / m > width / 16.0) m *= 2;
  return Grid(pp.length, m);
}

int power_of(int m) { return m == 1 ? 3 : 6; }

}  // namespace

double pedestal(double c, const ProfileParams& pp) {
  check(c, pp);
  if (pp.domain == Domain::Infinite) return 0.0;
  const double half = 0.5 * pp.length;
  auto mass = [&](double cc) { return std::sqrt(cc) * std::tanh(half * std::sqrt(cc / (4.0 * pp.alpha))); };
  return 12.0 * std::sqrt(pp.alpha) / pp.length * (mass(pp.c0) - mass(c));
}

RealField u0_profile(const Grid& xi, double c, const ProfileParams& pp) {
  const double shift = pedestal(c, pp);
  const double kappa = std::sqrt(c / (4.0 * pp.alpha));
  return RealField::sample(xi, [&](double x) {
    const double s = 1.0 / std::cosh(kappa * x);
    return shift + 3.0 * c * s * s;
  });
}

namespace {

double slow_energy_on(const Grid& xi, double c, const ProfileParams& pp) {
  const RealField u = u0_profile(xi, c, pp);
  double sum = 0.0;
  for (double v : u.values) sum += v * v;
  return 0.5 * sum * xi.spacing();
}

}  // namespace

RealField g_functional(const SolvabilityForm& form, const RealField& profile, double c, const ProfileParams& pp) {
  check(c, pp);
  require(form.m >= 0 && form.m <= 3, ErrorKind::InvalidArgument, "derivative order must be 0..3");
  const RealField u3 = derivative(profile, 3);
  const RealField u1 = derivative(profile, 1);
  RealField h(profile.grid);
  for (size_t j = 0; j < h.values.size(); ++j) {
    h.values[j] = form.p * pp.alpha * u3.values[j] + form.q * profile.values[j] * u1.values[j];
  }
  RealField g = derivative(h, form.m);
  const double factor = std::pow(tau0(pp.alpha, pp.c0) * -(c + pedestal(c, pp)), form.m);
  for (auto& v : g.values) v *= factor;
  return g;
}

RealField g_functional(const schemes::Scheme& scheme, const RealField& profile, double c, const ProfileParams& pp) {
  return g_functional(solvability_form(scheme), profile, c, pp);
}

double solvability_rhs(const SolvabilityForm& form, double c, const ProfileParams& pp) {
  check(c, pp);
  const Grid xi = quadrature_grid(c, pp);
  const RealField u = u0_profile(xi, c, pp);
  const RealField g = g_functional(form, u, c, pp);
  RealField prod(xi);
  for (size_t j = 0; j < prod.values.size(); ++j) prod.values[j] = u.values[j] * g.values[j];
  return integrate(prod);
}

double solvability_rhs(const schemes::Scheme& scheme, double c, const ProfileParams& pp) {
  return solvability_rhs(solvability_form(scheme), c, pp);
}

double slow_energy(double c, const ProfileParams& pp) {
  check(c, pp);
  return slow_energy_on(quadrature_grid(c, pp), c, pp);
}

double slow_lhs_derivative(double c, const ProfileParams& pp, double relative_step) {
  check(c, pp);
  require(relative_step > 0.0 && relative_step < 0.25, ErrorKind::InvalidArgument, "relative step must be in (0, 0.25)");
  const double h = relative_step * c;
  // One grid for all evaluations so the difference sees no quadrature change.
  const Grid xi = quadrature_grid(c + 2.0 * h, pp);
  auto p = [&](double cc) { return slow_energy_on(xi, cc, pp); };
  const double d = (8.0 * (p(c + h) - p(c - h)) - (p(c + 2.0 * h) - p(c - 2.0 * h))) / (12.0 * h);
  require(std::abs(d) > 1e-14, ErrorKind::Numerical, "degenerate slow-time denominator P'(c)");
  return d;
}

double closed_form_coefficient(const schemes::Scheme& scheme) {
  const std::string name = schemes::name_of(scheme);
  if (name == "sbdf1") return 34.0 / 35.0;
  if (name == "sbdf2") return 86.0 / 35.0;
  if (name == "rk222") return (355045.0 - 245436.0 * std::numbers::sqrt2) / 5005.0;
  if (name == "rk443") return -77069.0 / 30030.0;
  throw Error(ErrorKind::NotAvailable, "no closed-form prediction for " + name);
}

namespace {

// Rate of y = c^-p in physical time for the closed forms.
double closed_form_y_rate(const schemes::Scheme& scheme, double alpha, double dt) {
  const int m = slow_order(scheme);
  return -closed_form_coefficient(scheme) * std::pow(dt, m) / std::pow(alpha, 0.5 * (m + 1));
}

}  // namespace

double closed_form_c(const schemes::Scheme& scheme, double t, double alpha, double dt, double c0) {
  require(t >= 0.0 && alpha > 0.0 && dt > 0.0 && c0 > 0.0, ErrorKind::InvalidArgument,
          "closed_form_c: invalid arguments");
  const int p = power_of(slow_order(scheme));
  const double y = std::pow(c0, -p) + closed_form_y_rate(scheme, alpha, dt) * t;
  require(y > 0.0, ErrorKind::Numerical, "closed_form_c: time is at or beyond the singularity");
  return std::pow(y, -1.0 / p);
}

double closed_form_endpoint(const schemes::Scheme& scheme, double alpha, double dt, double c0, double fraction) {
  const int p = power_of(slow_order(scheme));
  const double rate = closed_form_y_rate(scheme, alpha, dt);
  const double y0 = std::pow(c0, -p);
  if (rate < 0.0) return y0 / -rate;
  require(fraction > 0.0 && fraction < 1.0, ErrorKind::InvalidArgument, "decay fraction must lie in (0, 1)");
  // c^{3/2} falls to `fraction`: y = y0 fraction^{-2p/3}.
  return y0 * (std::pow(fraction, -2.0 * p / 3.0) - 1.0) / rate;
}

double MsPrediction::c_at(double t) const {
  require(!times.empty(), ErrorKind::InvalidArgument, "empty prediction");
  require(t >= times.front() && t <= times.back(), ErrorKind::InvalidArgument,
          "prediction time outside the integrated range");
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  size_t i = static_cast<size_t>(it - times.begin());
  if (i >= times.size()) i = times.size() - 1;
  if (i == 0) return c_values.front();
  const size_t a = i - 1, b = i;
  // Cubic Hermite in y = c^-p, which is close to linear in t.
  const int p = power_of(m);
  auto y = [&](size_t k) { return std::pow(c_values[k], -p); };
  auto ydot = [&](size_t k) { return -p * std::pow(c_values[k], -p - 1) * c_rates[k]; };
  const double h = times[b] - times[a];
  const double s = (t - times[a]) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
  const double yt = h00 * y(a) + h10 * h * ydot(a) + h01 * y(b) + h11 * h * ydot(b);
  return std::pow(yt, -1.0 / p);
}

MsPrediction integrate_quadrature_ode(const schemes::Scheme& scheme, double alpha, double dt, double c0,
                                      double length, Domain domain, const SlowOdeOptions& opts) {
  require(alpha > 0.0 && dt > 0.0 && c0 > 0.0 && length > 0.0, ErrorKind::InvalidArgument,
          "integrate_slow_ode: invalid parameters");
  const SolvabilityForm form = solvability_form(scheme);
  ProfileParams pp{alpha, c0, length, opts.quadrature, domain};
  const int m = slow_order(scheme);
  const int p = power_of(m);
  const double eps_m = std::pow(epsilon(dt, alpha, c0), m);

  MsPrediction pred;
  pred.scheme = schemes::name_of(scheme);
  pred.domain = domain;
  pred.epsilon = epsilon(dt, alpha, c0);
  pred.m = m;
  pred.alpha = alpha;
  pred.dt = dt;
  pred.c0 = c0;
  pred.length = length;

  // dc/dt_m from quadrature.
  auto rate = [&](double c) { return solvability_rhs(form, c, pp) / slow_lhs_derivative(c, pp); };
  // Slow time as a function of s = y / y0, integrated from s = 1 towards 0.
  const double y0 = std::pow(c0, -p);
  auto dtds = [&](double s, double* c_out, double* rate_out) {
    const double c = c0 * std::pow(s, -1.0 / p);
    const double r = rate(c);
    const double ydot = -p * std::pow(c, -p - 1) * r;
    require(ydot < 0.0, ErrorKind::Numerical, "slow ODE does not approach a blow-up");
    if (c_out) *c_out = c;
    if (rate_out) *rate_out = r;
    return y0 / ydot;
  };
  auto rk4 = [&](double s, double h, double f0) {
    const double k2 = dtds(s + 0.5 * h, nullptr, nullptr);
    const double k4 = dtds(s + h, nullptr, nullptr);
    return h / 6.0 * (f0 + 4.0 * k2 + k4);  // the integrand does not depend on the slow time
  };

  const double s_stop = std::pow(opts.c_stop_factor, -p);
  double s = 1.0, tm = 0.0, h = -0.01;
  double c = 0.0, r = 0.0;
  double f = dtds(s, &c, &r);
  pred.times.push_back(0.0);
  pred.c_values.push_back(c);
  pred.c_rates.push_back(eps_m * r);
  while (s > s_stop) {
    if (s + h < s_stop) h = s_stop - s;
    const double full = rk4(s, h, f);
    const double fm = dtds(s + 0.5 * h, nullptr, nullptr);
    const double half = rk4(s, 0.5 * h, f) + rk4(s + 0.5 * h, 0.5 * h, fm);
    const double err = std::abs(half - full) / 15.0;
    const double scale = opts.tolerance * std::max(std::abs(tm), std::abs(half));
    if (err <= scale || std::abs(h) < 1e-14) {
      tm += half + (half - full) / 15.0;
      s += h;
      f = dtds(s, &c, &r);
      pred.times.push_back(tm / eps_m);
      pred.c_values.push_back(c);
      pred.c_rates.push_back(eps_m * r);
      const double grow = err > 0.0 ? 0.9 * std::pow(scale / err, 0.2) : 4.0;
      h *= std::clamp(grow, 0.2, 4.0);
    } else {
      h *= std::clamp(0.9 * std::pow(scale / err, 0.2), 0.1, 0.5);
    }
  }
  // Remaining slow time to y = 0 with y locally linear.
  const double tail = -s * f;
  pred.endpoint = EndpointKind::Blowup;
  pred.endpoint_time = (tm + tail) / eps_m;
  return pred;
}

MsPrediction integrate_slow_ode(const schemes::Scheme& scheme, double alpha, double dt, double c0, double length,
                                Domain domain, const SlowOdeOptions& opts) {
  if (domain == Domain::Finite) return integrate_quadrature_ode(scheme, alpha, dt, c0, length, domain, opts);

  MsPrediction pred;
  pred.scheme = schemes::name_of(scheme);
  pred.domain = domain;
  pred.m = slow_order(scheme);
  pred.epsilon = epsilon(dt, alpha, c0);
  pred.alpha = alpha;
  pred.dt = dt;
  pred.c0 = c0;
  pred.length = length;
  const bool decays = closed_form_coefficient(scheme) < 0.0;
  pred.endpoint = decays ? EndpointKind::Decay : EndpointKind::Blowup;
  pred.fraction = decays ? opts.decay_fraction : 0.0;
  pred.endpoint_time = closed_form_endpoint(scheme, alpha, dt, c0, opts.decay_fraction);

  // Nodes uniform in y, which is linear in t; blow-up trajectories stop at c_stop.
  const int p = power_of(pred.m);
  const double y0 = std::pow(c0, -p);
  const double rate = closed_form_y_rate(scheme, alpha, dt);
  const double t_last = decays ? 2.0 * pred.endpoint_time : (y0 * std::pow(opts.c_stop_factor, -p) - y0) / rate;
  const int n = std::max(opts.samples, 2);
  for (int i = 0; i < n; ++i) {
    const double t = t_last * i / (n - 1);
    const double c = closed_form_c(scheme, t, alpha, dt, c0);
    pred.times.push_back(t);
    pred.c_values.push_back(c);
    pred.c_rates.push_back(-rate / p * std::pow(c, p + 1));
  }
  return pred;
}

double predicted_l2(const MsPrediction& prediction, double t, int quadrature) {
  const double c = prediction.c_at(t);
  ProfileParams pp{prediction.alpha, prediction.c0, prediction.length, quadrature, prediction.domain};
  const RealField u = u0_profile(quadrature_grid(c, pp), c, pp);
  return spectral::l2_norm(u);
}

}  // namespace kdvlab::multiscale
