#pragma once

// Error measurements against the exact travelling soliton.

#include <vector>

#include "kdvlab/kdv.hpp"

namespace kdvlab::diagnostics {

using kdv::SolitonParams;
using spectral::RealField;

struct ErrorSeries {
  std::vector<double> times;
  std::vector<double> l2_errors;
  std::vector<double> phase_offsets;     // peak position - (x0 + c t), wrapped to [-L/2, L/2)
  std::vector<double> amplitude_ratios;  // max u / 3 c0
};

/// ||u - u_ex(t)||_2 with the exact soliton wrapped onto the periodic grid.
double error_vs_exact(const RealField& u, double t, const SolitonParams& p);

/// Builds the series from a trace recorded with track_error.
ErrorSeries error_series(const kdv::SimulationTrace& trace, const SolitonParams& p);

/// Least-squares slope of log(value) against t over samples with t in [t_lo, t_hi].
double fit_growth_rate(const std::vector<double>& times, const std::vector<double>& values, double t_lo,
                       double t_hi);
double fit_growth_rate(const ErrorSeries& series, double t_lo, double t_hi);

/// Default fitting window: the error range from 0.1% to 10% of the exact soliton
/// norm, after the bootstrap steps. Below that the timestepping error of the
/// soliton itself hides the unstable mode. Returns {t_lo, t_hi}.
std::pair<double, double> growth_window(const ErrorSeries& series, double bootstrap_time, double exact_norm);

/// ||v v_x||_2 for v = u - u_ex(t), product dealiased.
double nonlinear_term_norm(const RealField& u, double t, const SolitonParams& p);

/// Third standardized moment of u about its peak (u as the weight, periodic offsets).
/// Zero for a symmetric profile; positive when the tail trails to the right.
double peak_skewness(const RealField& u);

/// Linear interpolation of the sampled L2 norm at t = fraction * t_ref.
double intermediate_l2(const kdv::SimulationTrace& trace, double fraction, double t_ref);

}  // namespace kdvlab::diagnostics
