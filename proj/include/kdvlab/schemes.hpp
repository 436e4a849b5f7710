#pragma once

// IMEX coefficient tables.
//
// SBDF (s steps):  (1/dt) sum_i a_i U^{n+i} + sum_i gamma_i L U^{n+i} = sum_{i<s} beta_i f(U^{n+i})
// ERK+DIRK (q stages, stage 0 = U^n):
//   (1 + dt A~_ii L) U_i = U_0 + dt sum_{j<i} (A^_ij f(U_j) - A~_ij L U_j),   U^{n+1} = U_q

#include <complex>
#include <string>
#include <variant>
#include <vector>

namespace kdvlab::schemes {

using Complex = std::complex<double>;

struct SbdfScheme {
  int steps = 1;              // s, also the order of accuracy
  std::vector<double> a;      // a_0..a_s
  std::vector<double> beta;   // beta_0..beta_{s-1}
  std::vector<double> gamma;  // gamma_0..gamma_s, purely implicit: gamma_s = 1

  int order() const noexcept { return steps; }
};

struct RkScheme {
  std::string name;
  int stages = 1;                                  // q
  std::vector<std::vector<double>> explicit_tab;   // (q+1)x(q+1), strictly lower triangular
  std::vector<std::vector<double>> implicit_tab;   // (q+1)x(q+1), lower triangular, padded row/col 0
  std::vector<double> abscissae;                   // c~_0..c~_q
  int accuracy = 1;

  int order() const noexcept { return accuracy; }
};

using Scheme = std::variant<SbdfScheme, RkScheme>;

SbdfScheme sbdf(int order);
RkScheme rk(const std::string& name);

/// Accepts "sbdf1".."sbdf4", "rk222", "rk443" (case-insensitive).
Scheme scheme_by_name(const std::string& name);
std::string name_of(const Scheme& scheme);
int order_of(const Scheme& scheme);

/// Update factor of one RK step on dy/dt = (a_im + a_ex) y with z = a dt.
Complex rk_update_factor(const RkScheme& scheme, Complex z_im, Complex z_ex);

/// One SBDF step on the same test problem started from exact history
/// y^{n+i} = exp(z i), returning y^{n+s}.
Complex sbdf_step_from_exact_history(const SbdfScheme& scheme, Complex z_im, Complex z_ex);

/// |one-step result - exp((a_im + a_ex) dt)|.
double one_step_error(const Scheme& scheme, Complex a_im, Complex a_ex, double dt);

struct OrderReport {
  int declared_order = 0;
  double observed_order = 0.0;       // minimum slope over samples
  double max_residual = 0.0;         // max error / dt^{order+1} over samples and dt ladder
  double max_consistency_residual = 0.0;
  std::vector<double> dts;
};

/// Richardson slope of the one-step error over a halving dt ladder for a fixed
/// set of pseudo-random (a_im, a_ex) samples. Local order should be order + 1.
OrderReport verify_order_conditions(const Scheme& scheme, int samples = 8);

}  // namespace kdvlab::schemes
