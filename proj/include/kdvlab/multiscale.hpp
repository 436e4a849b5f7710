#pragma once

// Slow evolution of the soliton parameter c under timestepping error.
//
// The leading-order profile is U0 = u_inf(c) + 3c sech^2(sqrt(c/4 alpha) xi), with the
// pedestal u_inf chosen so the periodic mean does not depend on c. A scheme whose
// first nontrivial solvability condition appears at order eps^m gives
//
//   dc/dt_m = int U0 g dxi / P'(c),   P(c) = (1/2) int U0^2 dxi,   t_m = eps^m t,
//
// where g = tau0^m (-(c + u_inf))^m d^m/dxi^m (p alpha U0''' + q U0 U0').

#include <string>
#include <vector>

#include "kdvlab/schemes.hpp"
#include "kdvlab/spectral.hpp"

namespace kdvlab::multiscale {

using spectral::Grid;
using spectral::RealField;

enum class Domain { Finite, Infinite };
enum class EndpointKind { Blowup, Decay };

std::string to_string(Domain d);
std::string to_string(EndpointKind k);

/// Derivative order m and weights (p, q) of the g functional.
struct SolvabilityForm {
  int m;
  double p;
  double q;
};

/// Available for sbdf1 and sbdf2 only; other schemes raise NotAvailable.
SolvabilityForm solvability_form(const schemes::Scheme& scheme);
/// 1 for sbdf1, 3 for sbdf2, rk222 and rk443.
int slow_order(const schemes::Scheme& scheme);

/// Timestep measured in soliton crossing times, dt / tau0.
double epsilon(double dt, double alpha, double c0);
/// x_FWHM(c0) / c0.
double tau0(double alpha, double c0);

struct ProfileParams {
  double alpha = 0.00697;
  double c0 = 0.5;
  double length = 10.0;
  int quadrature = 4096;
  Domain domain = Domain::Finite;  // Infinite drops the pedestal
};

double pedestal(double c, const ProfileParams& pp);
RealField u0_profile(const Grid& xi, double c, const ProfileParams& pp);

/// g on the quadrature grid for a given form.
RealField g_functional(const SolvabilityForm& form, const RealField& profile, double c, const ProfileParams& pp);
RealField g_functional(const schemes::Scheme& scheme, const RealField& profile, double c, const ProfileParams& pp);

double solvability_rhs(const SolvabilityForm& form, double c, const ProfileParams& pp);
double solvability_rhs(const schemes::Scheme& scheme, double c, const ProfileParams& pp);

/// (1/2) int U0^2 and its c-derivative by fourth-order central differences.
double slow_energy(double c, const ProfileParams& pp);
double slow_lhs_derivative(double c, const ProfileParams& pp, double relative_step = 1e-3);

/// Infinite-domain coefficient K in d(c^-p)/dt = -K dt^m / alpha^((m+1)/2), p = 3 for m = 1 and
/// p = 6 for m = 3. Negative for rk443, whose solitons decay.
double closed_form_coefficient(const schemes::Scheme& scheme);
/// Closed-form c(t). Raises Numerical at or beyond the singularity of a blow-up scheme.
double closed_form_c(const schemes::Scheme& scheme, double t, double alpha, double dt, double c0);
/// Closed-form endpoint: blow-up time, or for rk443 the time at which c^{3/2}, which is
/// proportional to the infinite-domain squared norm, has fallen to `fraction` of its start.
double closed_form_endpoint(const schemes::Scheme& scheme, double alpha, double dt, double c0,
                            double fraction = 0.9);

struct MsPrediction {
  std::string scheme;
  Domain domain = Domain::Finite;
  EndpointKind endpoint = EndpointKind::Blowup;
  double endpoint_time = 0.0;
  double fraction = 0.0;  // Decay only
  double epsilon = 0.0;
  int m = 1;
  double alpha = 0.0;
  double dt = 0.0;
  double c0 = 0.0;
  double length = 0.0;
  // Trajectory nodes: physical time, c, and dc/dt for Hermite interpolation.
  std::vector<double> times;
  std::vector<double> c_values;
  std::vector<double> c_rates;

  double c_at(double t) const;
};

struct SlowOdeOptions {
  double tolerance = 1e-10;
  /// Integration stops when c reaches this multiple of c0; the remaining time to the
  /// singularity is added from the local linear behaviour of c^{-p}.
  double c_stop_factor = 20.0;
  int quadrature = 4096;
  int samples = 200;  // trajectory nodes for the infinite-domain closed forms
  double decay_fraction = 0.9;
};

MsPrediction integrate_slow_ode(const schemes::Scheme& scheme, double alpha, double dt, double c0, double length,
                                Domain domain, const SlowOdeOptions& opts = {});

/// Numerical integration of the quadrature ODE irrespective of domain; with
/// Domain::Infinite the pedestal is dropped, which reproduces the closed forms.
MsPrediction integrate_quadrature_ode(const schemes::Scheme& scheme, double alpha, double dt, double c0,
                                      double length, Domain domain, const SlowOdeOptions& opts = {});

/// L2 norm of the profile at c(t).
double predicted_l2(const MsPrediction& prediction, double t, int quadrature = 4096);

}  // namespace kdvlab::multiscale
