#pragma once

// Pseudospectral KdV solver:  u_t + alpha u_xxx = -u u_x  on a periodic grid,
// dispersion implicit, dealiased advection explicit.

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "kdvlab/schemes.hpp"
#include "kdvlab/spectral.hpp"

namespace kdvlab::kdv {

using spectral::Grid;
using spectral::RealField;
using spectral::SpectralField;

struct SolitonParams {
  double c = 0.5;
  double alpha = 0.00697;
  double x0 = 0.0;

  /// sqrt(c / (4 alpha)), the inverse width inside the sech^2.
  double inverse_width() const;
  /// Full width at half maximum, 2 sqrt(4 alpha / c) ln(1 + sqrt 2).
  double fwhm() const;
  void validate() const;
};

/// 3c sech^2(sqrt(c/4a)(x - x0 - ct)). With a finite period the argument is
/// first reduced to [-L/2, L/2).
double soliton_value(double x, double t, const SolitonParams& p,
                     double period = std::numeric_limits<double>::infinity());
RealField soliton_field(const Grid& grid, const SolitonParams& p, double t);

/// -u u_x with the product evaluated by the 3/2 rule.
SpectralField rhs_explicit(const SpectralField& u);

/// Mode-wise division by (weight + multiplier (i k)^3). The Nyquist mode is zeroed.
SpectralField implicit_solve(const SpectralField& rhs, double multiplier, double weight = 1.0);

enum class TerminationKind { BlewUp, ReachedTmax, DecayedBelow };

struct Termination {
  TerminationKind kind = TerminationKind::ReachedTmax;
  double time = 0.0;
  double fraction = 0.0;  // DecayedBelow only
};

std::string to_string(TerminationKind kind);

struct SimulationConfig {
  Grid grid{10.0, 512};
  SolitonParams soliton;
  schemes::Scheme scheme = schemes::sbdf(2);
  double dt = 1e-3;
  double t_max = 1.0;
  double blowup_factor = 1e6;
  /// Stop once ||u||_2^2 falls to this fraction of its initial value (0 disables).
  double decay_fraction = 0.0;
  int sample_every = 100;
  std::vector<double> snapshot_times;
  /// Record l2 error and phase offset against the exact travelling soliton at every sample.
  bool track_error = false;

  void validate() const;
};

struct Snapshot {
  double time;
  RealField field;
};

struct SimulationTrace {
  std::vector<double> times;
  std::vector<double> l2_norms;
  std::vector<double> amplitudes;
  std::vector<double> peak_positions;
  std::vector<double> l2_errors;      // only with track_error
  std::vector<double> phase_offsets;  // only with track_error
  std::vector<Snapshot> snapshots;
  Termination termination;
  long long steps = 0;
  int bootstrap_steps = 0;
  double initial_max = 0.0;
  double initial_l2 = 0.0;
  double final_mean = 0.0;  // k = 0 coefficient of the last good state
  std::vector<std::string> warnings;
};

/// Called at every recorded sample with the current time and state.
using SampleObserver = std::function<void(double t, const SpectralField& u)>;

SimulationTrace run(const SimulationConfig& config, const SampleObserver& observer = {});

/// Time of the last finite, below-threshold step, or nullopt if the run did not blow up.
std::optional<double> measure_blowup_time(const SimulationTrace& trace);
std::optional<double> measure_decay_time(const SimulationTrace& trace);

/// Peak of a periodic field: grid argmax, then Newton steps on the trigonometric interpolant.
struct Peak {
  double position;
  double value;
};
Peak locate_peak(const RealField& u);

}  // namespace kdvlab::kdv
