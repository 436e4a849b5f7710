#pragma once

// Von Neumann analysis about the travelling soliton.
//
// Perturbations live on the retained modes k = -N/2+1 .. N/2-1 (the Nyquist mode
// is never evolved), so a problem on an N-point grid has n = N - 1 unknowns per
// block. The ansatz v^n = sigma^n T(t_n) w, with T(t) = diag(exp(-i k c t)),
// follows the soliton; the generalized problem is reduced to a standard one by
// inverting the mode-diagonal left operator.

#include <optional>
#include <string>
#include <vector>

#include "kdvlab/kdv.hpp"
#include "kdvlab/linalg.hpp"
#include "kdvlab/schemes.hpp"

namespace kdvlab::vn {

using linalg::Complex;
using linalg::Matrix;
using spectral::Grid;

/// Retained wavenumber index k for matrix row r.
int mode_of_row(const Grid& grid, int r);
int retained_modes(const Grid& grid);

/// Fourier coefficients of the periodic soliton at time t for |k| < N/2,
/// computed from a 4x oversampled grid (index k + N/2 - 1).
std::vector<Complex> background_modes(const Grid& grid, const kdv::SolitonParams& p, double t);

struct BackgroundOperator {
  Matrix mult_u;   // (k, k') -> u_hat(k - k')
  Matrix mult_ux;  // (k, k') -> i (k - k') u_hat(k - k')
  double cutoff = 1e-16;

  /// mult_u D + mult_ux, i.e. the operator v -> (u v)_x.
  Matrix advection(const Grid& grid) const;
};

BackgroundOperator background_operator(const Grid& grid, const kdv::SolitonParams& p, double t,
                                       double cutoff = 1e-16);

struct ShiftOperator {
  std::vector<Complex> phases;  // exp(-i k d); applied to f gives f(x - d)

  std::vector<Complex> apply(const std::vector<Complex>& v) const;
};

ShiftOperator shift_operator(const Grid& grid, double distance);

struct EigenProblem {
  std::string scheme;
  double alpha = 0.0;
  double dt = 0.0;
  int grid_size = 0;
  int block_size = 0;  // s n for SBDF, q n for RK
  Matrix standard;     // one-step amplification operator in the co-moving frame
};

struct AssemblyOptions {
  double cutoff = 1e-16;
  double reference_time = 0.0;
  /// Zero background: only the linear dispersion remains.
  bool zero_background = false;
};

EigenProblem assemble_sbdf_evp(const schemes::SbdfScheme& scheme, double dt, const kdv::SolitonParams& p,
                               const Grid& grid, const AssemblyOptions& opts = {});
EigenProblem assemble_rk_evp(const schemes::RkScheme& scheme, double dt, const kdv::SolitonParams& p,
                             const Grid& grid, const AssemblyOptions& opts = {});
EigenProblem assemble_evp(const schemes::Scheme& scheme, double dt, const kdv::SolitonParams& p, const Grid& grid,
                          const AssemblyOptions& opts = {});

struct EigenReport {
  std::string scheme;
  double alpha = 0.0;
  double dt = 0.0;
  int grid_size = 0;
  int block_size = 0;
  std::vector<Complex> sigmas;   // decreasing modulus
  std::vector<Complex> lambdas;  // log(sigma) / dt, principal branch
  std::vector<double> drift_ratios;
  std::vector<bool> resolved;

  /// Largest Re(lambda) over resolved modes, with the mode's sigma.
  std::pair<Complex, Complex> fastest() const;
  double max_growth_rate() const { return fastest().second.real(); }
};

EigenReport solve_spectrum(EigenProblem problem);

enum class DriftRule {
  KeepAbove,  // resolved when delta > threshold, as printed
  KeepBelow,  // resolved when delta < 1 / threshold
};

/// delta_i = min_j |sigma_i(N1) - sigma_j(N2)| / d_i with d_i the nearest-neighbour
/// distance in the N1 spectrum. Updates drift_ratios and resolved of `coarse`.
void drift_filter(EigenReport& coarse, const EigenReport& fine, DriftRule rule = DriftRule::KeepBelow,
                  double threshold = 1e3);

/// Fraction of modes flagged unresolved.
double rejection_fraction(const EigenReport& report);

struct CutoffPoint {
  double cutoff;
  Complex lambda_max;  // leading growth rate (largest Re)
  double error;        // distance to the reference or its conjugate
};

/// Leading growth rate per cutoff, measured against the cutoff = 1e-16 reference.
std::vector<CutoffPoint> cutoff_study(const schemes::Scheme& scheme, double dt, const kdv::SolitonParams& p,
                                      const Grid& grid, const std::vector<double>& cutoffs);

}  // namespace kdvlab::vn
