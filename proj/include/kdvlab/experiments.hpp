#pragma once

// Experiment drivers behind the command-line subcommands.

#include <atomic>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "kdvlab/config.hpp"
#include "kdvlab/kdv.hpp"
#include "kdvlab/multiscale.hpp"

namespace kdvlab::experiments {

/// Runs fn(i) for i in [0, count) on `workers` threads. fn must not throw.
template <class F>
void parallel_for(size_t count, int workers, F&& fn) {
  const size_t pool = std::min<size_t>(count, static_cast<size_t>(std::max(workers, 1)));
  if (pool <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> threads;
  for (size_t w = 0; w < pool; ++w) {
    threads.emplace_back([&] {
      for (size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& t : threads) t.join();
}

struct RunSpec {
  std::string scheme;
  double alpha = 0.00697;
  double dt = 0.0;
  int n = 256;
  double c0 = 0.5;
  double length = 10.0;
  double t_max = 0.0;
  double blowup_factor = 1e6;
  double decay_fraction = 0.0;
  int sample_every = 0;  // 0 picks roughly 4000 samples over t_max
};

kdv::SimulationConfig to_simulation(const RunSpec& spec);

/// Simulation length when none is given: `factor` times the infinite-domain
/// closed-form endpoint. Schemes without a closed form need an explicit t_max.
double default_t_max(const std::string& scheme, double alpha, double dt, double c0, double factor = 3.0);

struct SurveyRow {
  RunSpec spec;
  std::string termination;  // blew_up, reached_tmax, decayed_below, or failed
  double time = 0.0;
  long long steps = 0;
  std::string status = "ok";
};

/// One run per spec; results keep the input order whatever the worker count.
std::vector<SurveyRow> run_survey(const std::vector<RunSpec>& runs, int workers);

/// Cartesian product scheme x alpha x dt x n from config lists.
std::vector<RunSpec> survey_runs(const config::Config& cfg);

struct CompareRow {
  std::string scheme;
  double alpha = 0.0;
  double dt = 0.0;
  double epsilon = 0.0;
  multiscale::Domain domain = multiscale::Domain::Finite;
  std::string endpoint;
  double t_measured = 0.0;
  double t_predicted = 0.0;
  double rel_error = 0.0;  // (measured - predicted) / measured
  double l2_rel_error_005 = 0.0;
  double l2_rel_error_05 = 0.0;
  std::string status = "ok";
};

struct SlopeFit {
  std::string scheme;
  double slope = 0.0;
  int points = 0;
};

struct CompareResult {
  std::vector<CompareRow> rows;
  std::vector<SlopeFit> slopes;  // log |rel_error| against log epsilon
};

/// Measured endpoints (simulated, or taken from `measured` when it has a matching
/// row) joined with multiple-scales predictions. RK schemes fall back to the
/// infinite-domain closed forms.
CompareResult run_compare(const std::vector<RunSpec>& runs, int workers, multiscale::Domain domain,
                          const std::vector<SurveyRow>& measured = {});

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Survey rows read back from a survey CSV.
std::vector<SurveyRow> read_survey(const std::string& path);

struct CommandResult {
  std::vector<std::string> files;
  std::vector<std::string> messages;
};

CommandResult cmd_simulate(const config::Config& cfg);
CommandResult cmd_survey(const config::Config& cfg);
CommandResult cmd_vn(const config::Config& cfg);
CommandResult cmd_regions(const config::Config& cfg);
CommandResult cmd_predict(const config::Config& cfg);
CommandResult cmd_compare(const config::Config& cfg);

}  // namespace kdvlab::experiments
