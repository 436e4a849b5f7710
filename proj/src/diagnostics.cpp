#include "kdvlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "kdvlab/error.hpp"

namespace kdvlab::diagnostics {

namespace {

RealField exact_on(const spectral::Grid& grid, double t, const SolitonParams& p) {
  return kdv::soliton_field(grid, p, t);
}

}  // namespace

double error_vs_exact(const RealField& u, double t, const SolitonParams& p) {
  require(t >= 0.0, ErrorKind::InvalidArgument, "error_vs_exact: negative time");
  const RealField ex = exact_on(u.grid, t, p);
  double sum = 0.0;
  for (size_t j = 0; j < u.values.size(); ++j) {
    const double d = u.values[j] - ex.values[j];
    sum += d * d;
  }
  return std::sqrt(sum * u.grid.spacing());
}

ErrorSeries error_series(const kdv::SimulationTrace& trace, const SolitonParams& p) {
  require(trace.l2_errors.size() == trace.times.size(), ErrorKind::InvalidArgument,
          "error_series: trace was recorded without error tracking");
  ErrorSeries s;
  s.times = trace.times;
  s.l2_errors = trace.l2_errors;
  s.phase_offsets = trace.phase_offsets;
  s.amplitude_ratios.reserve(trace.amplitudes.size());
  for (double a : trace.amplitudes) s.amplitude_ratios.push_back(a / (3.0 * p.c));
  return s;
}

double fit_growth_rate(const std::vector<double>& times, const std::vector<double>& values, double t_lo,
                       double t_hi) {
  require(times.size() == values.size(), ErrorKind::InvalidArgument, "fit_growth_rate: length mismatch");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    if (t < t_lo || t > t_hi) continue;
    require(values[i] > 0.0 && std::isfinite(values[i]), ErrorKind::Numerical,
            "fit_growth_rate: nonpositive or non-finite value in window");
    const double y = std::log(values[i]);
    sx += t;
    sy += y;
    sxx += t * t;
    sxy += t * y;
    ++n;
  }
  require(n >= 10, ErrorKind::InvalidArgument, "fit_growth_rate: fewer than 10 samples in window");
  const double denom = n * sxx - sx * sx;
  require(denom > 0.0, ErrorKind::Numerical, "fit_growth_rate: degenerate time window");
  return (n * sxy - sx * sy) / denom;
}

double fit_growth_rate(const ErrorSeries& series, double t_lo, double t_hi) {
  return fit_growth_rate(series.times, series.l2_errors, t_lo, t_hi);
}

std::pair<double, double> growth_window(const ErrorSeries& series, double bootstrap_time, double exact_norm) {
  require(!series.times.empty(), ErrorKind::InvalidArgument, "growth_window: empty series");
  double t_lo = bootstrap_time;
  double t_hi = series.times.back();
  bool started = false;
  for (size_t i = 0; i < series.times.size(); ++i) {
    if (series.times[i] <= bootstrap_time) continue;
    if (!started && series.l2_errors[i] >= 1e-3 * exact_norm) {
      t_lo = series.times[i];
      started = true;
    }
    if (series.l2_errors[i] >= 0.1 * exact_norm) {
      t_hi = series.times[i > 0 ? i - 1 : 0];
      break;
    }
  }
  return {t_lo, t_hi};
}

double nonlinear_term_norm(const RealField& u, double t, const SolitonParams& p) {
  require(t > 0.0, ErrorKind::InvalidArgument, "nonlinear_term_norm: time must be positive");
  RealField v = u;
  const RealField ex = exact_on(u.grid, t, p);
  for (size_t j = 0; j < v.values.size(); ++j) v.values[j] -= ex.values[j];
  const auto vh = forward_transform(v);
  return l2_norm(dealias_product(vh, differentiate(vh, 1)));
}

double intermediate_l2(const kdv::SimulationTrace& trace, double fraction, double t_ref) {
  const auto& t = trace.times;
  require(!t.empty(), ErrorKind::InvalidArgument, "intermediate_l2: empty trace");
  const double at = fraction * t_ref;
  require(std::isfinite(at) && at >= t.front() && at <= t.back(), ErrorKind::InvalidArgument,
          "intermediate_l2: time outside the recorded range");
  const auto it = std::lower_bound(t.begin(), t.end(), at);
  const size_t i = static_cast<size_t>(it - t.begin());
  if (*it == at || i == 0) return trace.l2_norms[i];
  const double w = (at - t[i - 1]) / (t[i] - t[i - 1]);
  return (1.0 - w) * trace.l2_norms[i - 1] + w * trace.l2_norms[i];
}

double peak_skewness(const RealField& u) {
  const auto peak = kdv::locate_peak(u);
  const double length = u.grid.length();
  // (offset, weight); a point at exactly L/2 from the peak is split between both sides
  std::vector<std::pair<double, double>> pts;
  for (int j = 0; j < u.grid.size(); ++j) {
    const double d = std::remainder(u.grid.point(j) - peak.position, length);
    const double w = u.values[static_cast<size_t>(j)];
    if (std::abs(std::abs(d) - 0.5 * length) < 1e-12 * length) {
      pts.emplace_back(0.5 * length, 0.5 * w);
      pts.emplace_back(-0.5 * length, 0.5 * w);
    } else {
      pts.emplace_back(d, w);
    }
  }
  double m0 = 0.0, m1 = 0.0;
  for (const auto& [d, w] : pts) {
    m0 += w;
    m1 += w * d;
  }
  require(m0 > 0.0, ErrorKind::Numerical, "peak_skewness: field has no positive mass");
  const double mean = m1 / m0;
  double m2 = 0.0, m3 = 0.0;
  for (const auto& [d, w] : pts) {
    const double e = d - mean;
    m2 += w * e * e;
    m3 += w * e * e * e;
  }
  require(m2 > 0.0, ErrorKind::Numerical, "peak_skewness: degenerate spread");
  return (m3 / m0) / std::pow(m2 / m0, 1.5);
}

}  // namespace kdvlab::diagnostics
