#include "kdvlab/kdv.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kdvlab/error.hpp"

namespace kdvlab::kdv {

using spectral::Complex;

double SolitonParams::inverse_width() const { return std::sqrt(c / (4.0 * alpha)); }

double SolitonParams::fwhm() const {
  return 2.0 * std::sqrt(4.0 * alpha / c) * std::log(1.0 + std::numbers::sqrt2);
}

void SolitonParams::validate() const {
  require(std::isfinite(c) && c > 0.0, ErrorKind::InvalidArgument, "soliton speed c must be positive");
  require(std::isfinite(alpha) && alpha > 0.0, ErrorKind::InvalidArgument, "dispersion alpha must be positive");
  require(std::isfinite(x0), ErrorKind::InvalidArgument, "soliton position must be finite");
}

double soliton_value(double x, double t, const SolitonParams& p, double period) {
  double arg = x - p.x0 - p.c * t;
  if (std::isfinite(period)) {
    arg -= period * std::floor(arg / period + 0.5);
    if (arg >= 0.5 * period) arg -= period;
  }
  const double s = 1.0 / std::cosh(p.inverse_width() * arg);
  return 3.0 * p.c * s * s;
}

RealField soliton_field(const Grid& grid, const SolitonParams& p, double t) {
  return RealField::sample(grid, [&](double x) { return soliton_value(x, t, p, grid.length()); });
}

SpectralField rhs_explicit(const SpectralField& u) {
  for (const auto& c : u.coeffs) {
    require(std::isfinite(c.real()) && std::isfinite(c.imag()), ErrorKind::NonFiniteData,
            "rhs_explicit: non-finite coefficients");
  }
  SpectralField out = dealias_product(u, differentiate(u, 1));
  for (auto& c : out.coeffs) c = -c;
  return out;
}

SpectralField implicit_solve(const SpectralField& rhs, double multiplier, double weight) {
  require(weight != 0.0, ErrorKind::Numerical, "implicit_solve: zero diagonal weight");
  SpectralField out = rhs;
  const int half = rhs.grid.size() / 2;
  for (int k = 0; k < half; ++k) {
    const double kk = rhs.grid.wavenumber(k);
    const Complex denom(weight, -multiplier * kk * kk * kk);  // weight + m (ik)^3
    require(std::abs(denom) > 0.0, ErrorKind::Numerical, "implicit_solve: zero denominator");
    out.coeffs[static_cast<size_t>(k)] /= denom;
  }
  out.coeffs[static_cast<size_t>(half)] = 0.0;
  return out;
}

std::string to_string(TerminationKind kind) {
  switch (kind) {
    case TerminationKind::BlewUp: return "blew_up";
    case TerminationKind::ReachedTmax: return "reached_tmax";
    case TerminationKind::DecayedBelow: return "decayed_below";
  }
  return "unknown";
}

void SimulationConfig::validate() const {
  soliton.validate();
  require(std::isfinite(dt) && dt > 0.0, ErrorKind::InvalidArgument, "dt must be positive");
  require(std::isfinite(t_max) && t_max > 0.0, ErrorKind::InvalidArgument, "t_max must be positive");
  require(blowup_factor > 1.0, ErrorKind::InvalidArgument, "blowup_factor must exceed 1");
  require(decay_fraction >= 0.0 && decay_fraction < 1.0, ErrorKind::InvalidArgument,
          "decay_fraction must lie in [0, 1)");
  require(sample_every >= 1, ErrorKind::InvalidArgument, "sample_every must be at least 1");
  for (double t : snapshot_times) {
    require(std::isfinite(t) && t >= 0.0, ErrorKind::InvalidArgument, "snapshot times must be nonnegative");
  }
}

Peak locate_peak(const RealField& u) {
  const int n = u.grid.size();
  const auto& v = u.values;
  const auto it = std::max_element(v.begin(), v.end());
  const int j = static_cast<int>(it - v.begin());
  const double left = v[static_cast<size_t>((j + n - 1) % n)];
  const double mid = v[static_cast<size_t>(j)];
  const double right = v[static_cast<size_t>((j + 1) % n)];
  const double curvature = left - 2.0 * mid + right;
  double x = u.grid.point(j);
  if (curvature < 0.0) x += 0.5 * (left - right) / curvature * u.grid.spacing();

  // Newton on the derivative of the trigonometric interpolant.
  const SpectralField c = forward_transform(u);
  const int half = n / 2;
  auto eval = [&](double at, int order) {
    double sum = order == 0 ? c.coeffs[0].real() : 0.0;
    for (int k = 1; k <= half; ++k) {
      const double kk = u.grid.wavenumber(k);
      const Complex e = c.coeffs[static_cast<size_t>(k)] * std::polar(1.0, kk * at);
      const double w = k == half ? 1.0 : 2.0;
      switch (order) {
        case 0: sum += w * e.real(); break;
        case 1: sum -= w * kk * e.imag(); break;
        default: sum -= w * kk * kk * e.real(); break;
      }
    }
    return sum;
  };
  const double h = u.grid.spacing();
  for (int iter = 0; iter < 8; ++iter) {
    const double d2 = eval(x, 2);
    if (!(d2 < 0.0)) break;
    const double dx = std::clamp(-eval(x, 1) / d2, -h, h);
    x += dx;
    if (std::abs(dx) < 1e-14 * u.grid.length()) break;
  }
  const double value = eval(x, 0);
  const double L = u.grid.length();
  x -= L * std::floor((x + 0.5 * L) / L);
  return {x, value};
}

namespace {

double squared_norm(const Grid& grid, std::span<const Complex> c) {
  const int half = grid.size() / 2;
  double sum = std::norm(c[0]) + std::norm(c[static_cast<size_t>(half)]);
  for (int k = 1; k < half; ++k) sum += 2.0 * std::norm(c[static_cast<size_t>(k)]);
  return sum * grid.length();
}

// Fixed-step IMEX integrator working directly on half-spectrum buffers.
class Integrator {
 public:
  Integrator(const SimulationConfig& cfg)
      : cfg_(cfg), grid_(cfg.grid), modes_(static_cast<size_t>(grid_.modes())), dealias_(grid_), ux_(modes_) {
    dispersion_.resize(modes_);
    const int half = grid_.size() / 2;
    for (int k = 0; k <= half; ++k) {
      const double kk = grid_.wavenumber(k);
      // alpha (ik)^3; Nyquist excluded from the evolution.
      dispersion_[static_cast<size_t>(k)] = k == half ? Complex(0.0) : Complex(0.0, -cfg.soliton.alpha * kk * kk * kk);
    }
  }

  // -u u_x into out; returns max |u| on the dealiasing grid.
  double nonlinear(std::span<const Complex> u, std::span<Complex> out) {
    std::copy(u.begin(), u.end(), ux_.begin());
    spectral::apply_derivative(grid_, 1, ux_);
    dealias_.product(u, ux_, out);
    for (auto& c : out) c = -c;
    return dealias_.fine_max_abs_first();
  }

  // (weight + dt*gamma*L)^{-1} per mode, Nyquist forced to zero.
  std::vector<Complex> inverse_operator(double weight, double implicit_dt) const {
    std::vector<Complex> inv(modes_);
    for (size_t k = 0; k < modes_; ++k) inv[k] = 1.0 / (weight + implicit_dt * dispersion_[k]);
    inv.back() = 0.0;
    return inv;
  }

  const std::vector<Complex>& dispersion() const { return dispersion_; }
  size_t modes() const { return modes_; }

 private:
  const SimulationConfig& cfg_;
  Grid grid_;
  size_t modes_;
  spectral::Dealiaser dealias_;
  std::vector<Complex> ux_;
  std::vector<Complex> dispersion_;
};

using Buffer = std::vector<Complex>;

class Recorder {
 public:
  Recorder(const SimulationConfig& cfg, SimulationTrace& trace, const SampleObserver& observer)
      : cfg_(cfg), trace_(trace), observer_(observer), transformer_(cfg.grid), field_(cfg.grid) {
    snapshots_ = cfg.snapshot_times;
    std::sort(snapshots_.begin(), snapshots_.end());
  }

  void sample(double t, std::span<const Complex> u) {
    if (!trace_.times.empty() && trace_.times.back() >= t) return;
    transformer_.inverse(u, field_.values);
    const Peak peak = locate_peak(field_);
    trace_.times.push_back(t);
    trace_.l2_norms.push_back(std::sqrt(squared_norm(cfg_.grid, u)));
    trace_.amplitudes.push_back(peak.value);
    trace_.peak_positions.push_back(peak.position);
    if (cfg_.track_error) {
      const auto& p = cfg_.soliton;
      const double L = cfg_.grid.length();
      double sum = 0.0;
      for (int j = 0; j < cfg_.grid.size(); ++j) {
        const double d = field_.values[static_cast<size_t>(j)] - soliton_value(cfg_.grid.point(j), t, p, L);
        sum += d * d;
      }
      trace_.l2_errors.push_back(std::sqrt(sum * cfg_.grid.spacing()));
      double offset = peak.position - (p.x0 + p.c * t);
      offset -= L * std::floor(offset / L + 0.5);
      trace_.phase_offsets.push_back(offset);
    }
    if (observer_) observer_(t, SpectralField(cfg_.grid, Buffer(u.begin(), u.end())));
  }

  void maybe_snapshot(double t, double dt, std::span<const Complex> u) {
    while (next_snapshot_ < snapshots_.size() && t + 0.5 * dt >= snapshots_[next_snapshot_]) {
      RealField f(cfg_.grid);
      transformer_.inverse(u, f.values);
      trace_.snapshots.push_back({t, std::move(f)});
      ++next_snapshot_;
    }
  }

 private:
  const SimulationConfig& cfg_;
  SimulationTrace& trace_;
  const SampleObserver& observer_;
  spectral::Transformer transformer_;
  RealField field_;
  std::vector<double> snapshots_;
  size_t next_snapshot_ = 0;
};

bool finite(double x) { return std::isfinite(x); }

}  // namespace

SimulationTrace run(const SimulationConfig& cfg, const SampleObserver& observer) {
  cfg.validate();
  SimulationTrace trace;

  const Grid& grid = cfg.grid;
  const RealField initial = soliton_field(grid, cfg.soliton, 0.0);
  {
    const double L = grid.length();
    const double edge = soliton_value(-0.5 * L, 0.0, cfg.soliton, L);
    if (edge > 1e-10) trace.warnings.push_back("initial soliton is not resolved: boundary value " + std::to_string(edge));
  }
  SpectralField u0 = forward_transform(initial);
  u0.coeffs.back() = 0.0;
  {
    const double tail = std::abs(u0.coeffs[u0.coeffs.size() - 2]);
    if (tail > 1e-10 * std::abs(u0.coeffs[0]) && tail > 1e-14)
      trace.warnings.push_back("initial soliton spectrum not decayed at the resolution limit");
  }

  Integrator integ(cfg);
  Recorder rec(cfg, trace, observer);
  const size_t m = integ.modes();
  const double dt = cfg.dt;
  const long long max_steps = static_cast<long long>(std::ceil(cfg.t_max / dt - 1e-9));

  Buffer u = u0.coeffs;
  Buffer f(m);
  const double max0 = integ.nonlinear(u, f);
  trace.initial_max = max0;
  const double energy0 = squared_norm(grid, u);
  trace.initial_l2 = std::sqrt(energy0);
  const double threshold = cfg.blowup_factor * max0;

  rec.sample(0.0, u);
  rec.maybe_snapshot(0.0, dt, u);

  long long n = 0;
  Buffer previous = u;
  double previous_energy = energy0;
  auto finish = [&](TerminationKind kind, double t, double fraction = 0.0) {
    trace.termination = {kind, t, fraction};
    trace.steps = n;
  };

  // Advances (u, f) by one step. Returns false if the new state is non-finite or above threshold;
  // in that case u holds the bad state and `previous` the last good one.
  std::function<void()> step;
  const auto& scheme = cfg.scheme;

  // SBDF state: ring of past states and nonlinear terms, newest last.
  std::vector<Buffer> u_hist, f_hist;
  std::vector<std::vector<Complex>> sbdf_inverse;
  std::vector<schemes::SbdfScheme> sbdf_tables;
  // RK state.
  std::vector<Buffer> stage_u, stage_f, stage_lu;
  std::vector<std::vector<Complex>> rk_inverse;

  if (const auto* sb = std::get_if<schemes::SbdfScheme>(&scheme)) {
    for (int order = 1; order <= sb->steps; ++order) {
      sbdf_tables.push_back(schemes::sbdf(order));
      sbdf_inverse.push_back(integ.inverse_operator(sbdf_tables.back().a.back(), dt));
    }
    trace.bootstrap_steps = sb->steps - 1;
    u_hist.push_back(u);
    f_hist.push_back(f);
    step = [&, s = sb->steps]() {
      const int order = static_cast<int>(std::min<size_t>(u_hist.size(), static_cast<size_t>(s)));
      const auto& tab = sbdf_tables[static_cast<size_t>(order - 1)];
      const auto& inv = sbdf_inverse[static_cast<size_t>(order - 1)];
      const size_t base = u_hist.size() - static_cast<size_t>(order);
      Buffer next(m);
      for (size_t k = 0; k < m; ++k) {
        Complex acc = 0.0;
        for (int i = 0; i < order; ++i) {
          const size_t h = base + static_cast<size_t>(i);
          acc += -tab.a[static_cast<size_t>(i)] * u_hist[h][k] + dt * tab.beta[static_cast<size_t>(i)] * f_hist[h][k];
        }
        next[k] = acc * inv[k];
      }
      u = std::move(next);
    };
  } else {
    const auto& r = std::get<schemes::RkScheme>(scheme);
    const int q = r.stages;
    stage_u.assign(static_cast<size_t>(q + 1), Buffer(m));
    stage_f.assign(static_cast<size_t>(q), Buffer(m));
    stage_lu.assign(static_cast<size_t>(q), Buffer(m));
    for (int i = 1; i <= q; ++i) rk_inverse.push_back(integ.inverse_operator(1.0, dt * r.implicit_tab[i][i]));
    step = [&, q]() {
      const auto& disp = integ.dispersion();
      stage_u[0] = u;
      stage_f[0] = f;
      for (int i = 1; i <= q; ++i) {
        const size_t im1 = static_cast<size_t>(i - 1);
        for (size_t k = 0; k < m; ++k) stage_lu[im1][k] = disp[k] * stage_u[im1][k];
        if (i > 1) integ.nonlinear(stage_u[im1], stage_f[im1]);
        auto& out = stage_u[static_cast<size_t>(i)];
        const auto& inv = rk_inverse[im1];
        for (size_t k = 0; k < m; ++k) {
          Complex acc = stage_u[0][k];
          for (int j = 0; j < i; ++j) {
            const size_t jj = static_cast<size_t>(j);
            acc += dt * (r.explicit_tab[i][j] * stage_f[jj][k] - r.implicit_tab[i][j] * stage_lu[jj][k]);
          }
          out[k] = acc * inv[k];
        }
      }
      u = stage_u[static_cast<size_t>(q)];
    };
  }

  const bool sbdf_mode = !u_hist.empty();
  const size_t history_depth = sbdf_mode ? static_cast<size_t>(std::get<schemes::SbdfScheme>(scheme).steps) : 0;

  while (true) {
    if (n >= max_steps) {
      rec.sample(static_cast<double>(n) * dt, u);
      finish(TerminationKind::ReachedTmax, static_cast<double>(n) * dt);
      break;
    }
    previous = u;
    step();
    const double t_new = static_cast<double>(n + 1) * dt;
    const double energy = squared_norm(grid, u);
    double max_abs = std::numeric_limits<double>::infinity();
    if (finite(energy)) max_abs = integ.nonlinear(u, f);
    if (!finite(energy) || !finite(max_abs) || max_abs > threshold) {
      const double t_good = static_cast<double>(n) * dt;
      rec.sample(t_good, previous);
      u = previous;
      finish(TerminationKind::BlewUp, t_good);
      break;
    }
    ++n;
    if (sbdf_mode) {
      u_hist.push_back(u);
      f_hist.push_back(f);
      if (u_hist.size() > history_depth) {
        u_hist.erase(u_hist.begin());
        f_hist.erase(f_hist.begin());
      }
    }
    if (n % cfg.sample_every == 0) rec.sample(t_new, u);
    rec.maybe_snapshot(t_new, dt, u);
    if (cfg.decay_fraction > 0.0 && energy <= cfg.decay_fraction * energy0) {
      // Linear interpolation of the energy between the bracketing steps.
      const double target = cfg.decay_fraction * energy0;
      const double w = (previous_energy - target) / (previous_energy - energy);
      rec.sample(t_new, u);
      finish(TerminationKind::DecayedBelow, t_new - dt + w * dt, cfg.decay_fraction);
      break;
    }
    previous_energy = energy;
  }
  trace.final_mean = u[0].real();
  return trace;
}

std::optional<double> measure_blowup_time(const SimulationTrace& trace) {
  if (trace.termination.kind != TerminationKind::BlewUp) return std::nullopt;
  return trace.termination.time;
}

std::optional<double> measure_decay_time(const SimulationTrace& trace) {
  if (trace.termination.kind != TerminationKind::DecayedBelow) return std::nullopt;
  return trace.termination.time;
}

}  // namespace kdvlab::kdv
