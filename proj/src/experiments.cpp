#include "kdvlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>

#include "kdvlab/csv.hpp"
#include "kdvlab/diagnostics.hpp"
#include "kdvlab/error.hpp"
#include "kdvlab/regions.hpp"
#include "kdvlab/vn.hpp"

namespace kdvlab::experiments {

namespace fs = std::filesystem;
using csv::format;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string output_dir(const config::Config& cfg) {
  const std::string dir = cfg.get("output", ".");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error(ErrorKind::Io, "cannot create output directory '" + dir + "'");
  return dir;
}

std::string config_hash(const config::Config& cfg) { return csv::hex(csv::fnv1a(cfg.canonical())); }

std::string join(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

bool decays(const std::string& scheme) {
  try {
    return multiscale::closed_form_coefficient(schemes::scheme_by_name(scheme)) < 0.0;
  } catch (const Error&) {
    return false;
  }
}

multiscale::Domain parse_domain(const std::string& s) {
  if (s == "finite") return multiscale::Domain::Finite;
  if (s == "infinite") return multiscale::Domain::Infinite;
  throw Error(ErrorKind::Config, "domain must be 'finite' or 'infinite', got '" + s + "'");
}

// Finite-domain solvability forms exist for SBDF1/2 only; other schemes use the closed forms.
multiscale::Domain effective_domain(const schemes::Scheme& scheme, multiscale::Domain domain) {
  if (domain == multiscale::Domain::Infinite) return domain;
  try {
    multiscale::solvability_form(scheme);
    return domain;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotAvailable) throw;
    return multiscale::Domain::Infinite;
  }
}

void check_lists_nonempty(const std::vector<RunSpec>& runs) {
  require(!runs.empty(), ErrorKind::Config, "empty parameter grid");
}

}  // namespace

kdv::SimulationConfig to_simulation(const RunSpec& spec) {
  require(!spec.scheme.empty(), ErrorKind::Config, "empty scheme name");
  kdv::SimulationConfig sim;
  sim.grid = spectral::Grid(spec.length, spec.n);
  sim.soliton.c = spec.c0;
  sim.soliton.alpha = spec.alpha;
  sim.scheme = schemes::scheme_by_name(spec.scheme);
  sim.dt = spec.dt;
  sim.t_max = spec.t_max;
  sim.blowup_factor = spec.blowup_factor;
  sim.decay_fraction = spec.decay_fraction;
  if (spec.sample_every > 0) {
    sim.sample_every = spec.sample_every;
  } else {
    const double steps = spec.t_max / spec.dt;
    sim.sample_every = static_cast<int>(std::clamp(steps / 4000.0, 1.0, 1e9));
  }
  return sim;
}

double default_t_max(const std::string& scheme, double alpha, double dt, double c0, double factor) {
  const auto s = schemes::scheme_by_name(scheme);
  try {
    return factor * multiscale::closed_form_endpoint(s, alpha, dt, c0);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotAvailable) throw;
    throw Error(ErrorKind::Config, "t_max is required for " + scheme + " (no closed-form endpoint)");
  }
}

std::vector<SurveyRow> run_survey(const std::vector<RunSpec>& runs, int workers) {
  check_lists_nonempty(runs);
  std::vector<SurveyRow> rows(runs.size());
  parallel_for(runs.size(), workers, [&](size_t i) {
    SurveyRow& row = rows[i];
    row.spec = runs[i];
    try {
      const auto trace = kdv::run(to_simulation(runs[i]));
      row.termination = kdv::to_string(trace.termination.kind);
      row.time = trace.termination.time;
      row.steps = trace.steps;
    } catch (const std::exception& e) {
      row.termination = "failed";
      row.time = kNaN;
      row.status = sanitize(e.what());
    }
  });
  return rows;
}

std::vector<RunSpec> survey_runs(const config::Config& cfg) {
  const auto schemes = cfg.get_list("schemes");
  const auto alphas = cfg.get_doubles("alpha", {0.00697});
  const auto dts = cfg.get_doubles("dt");
  const auto ns = cfg.get_ints("n", {256});
  const double c0 = cfg.get_double("c", 0.5);
  const double length = cfg.get_double("length", 10.0);
  const double factor = cfg.get_double("t_max_factor", 3.0);
  std::vector<RunSpec> runs;
  for (const auto& s : schemes) {
    schemes::scheme_by_name(s);
    for (double a : alphas) {
      for (double dt : dts) {
        for (int n : ns) {
          RunSpec r;
          r.scheme = s;
          r.alpha = a;
          r.dt = dt;
          r.n = n;
          r.c0 = c0;
          r.length = length;
          r.t_max = cfg.has("t_max") ? cfg.get_double("t_max") : default_t_max(s, a, dt, c0, factor);
          r.blowup_factor = cfg.get_double("blowup_factor", 1e6);
          r.decay_fraction = cfg.get_double("decay_fraction", decays(s) ? 0.9 : 0.0);
          r.sample_every = cfg.get_int("sample_every", 0);
          runs.push_back(r);
        }
      }
    }
  }
  check_lists_nonempty(runs);
  return runs;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, ErrorKind::InvalidArgument, "slope fit needs two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    require(x[i] > 0.0 && y[i] > 0.0, ErrorKind::Numerical, "slope fit needs positive data");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

CompareResult run_compare(const std::vector<RunSpec>& runs, int workers, multiscale::Domain domain,
                          const std::vector<SurveyRow>& measured) {
  check_lists_nonempty(runs);
  CompareResult result;
  result.rows.resize(runs.size());
  parallel_for(runs.size(), workers, [&](size_t i) {
    const RunSpec& spec = runs[i];
    CompareRow& row = result.rows[i];
    row.scheme = spec.scheme;
    row.alpha = spec.alpha;
    row.dt = spec.dt;
    row.l2_rel_error_005 = kNaN;
    row.l2_rel_error_05 = kNaN;
    try {
      const auto scheme = schemes::scheme_by_name(spec.scheme);
      row.epsilon = multiscale::epsilon(spec.dt, spec.alpha, spec.c0);
      row.domain = effective_domain(scheme, domain);
      multiscale::SlowOdeOptions opts;
      opts.decay_fraction = spec.decay_fraction > 0.0 ? spec.decay_fraction : 0.9;
      const auto pred =
          multiscale::integrate_slow_ode(scheme, spec.alpha, spec.dt, spec.c0, spec.length, row.domain, opts);
      row.endpoint = multiscale::to_string(pred.endpoint);
      row.t_predicted = pred.endpoint_time;

      const auto match = std::find_if(measured.begin(), measured.end(), [&](const SurveyRow& m) {
        return m.spec.scheme == spec.scheme && m.spec.alpha == spec.alpha && m.spec.dt == spec.dt &&
               m.spec.n == spec.n && m.status == "ok";
      });
      std::optional<kdv::SimulationTrace> trace;
      if (match != measured.end()) {
        row.t_measured = match->time;
      } else {
        trace = kdv::run(to_simulation(spec));
        const auto kind = trace->termination.kind;
        require(kind != kdv::TerminationKind::ReachedTmax, ErrorKind::Numerical,
                "run reached t_max without an endpoint");
        row.t_measured = trace->termination.time;
      }
      row.rel_error = (row.t_measured - row.t_predicted) / row.t_measured;
      if (trace) {
        const double fractions[2] = {0.05, 0.5};
        double* out[2] = {&row.l2_rel_error_005, &row.l2_rel_error_05};
        for (int k = 0; k < 2; ++k) {
          const double meas = diagnostics::intermediate_l2(*trace, fractions[k], row.t_measured);
          const double prd = multiscale::predicted_l2(pred, fractions[k] * row.t_predicted);
          *out[k] = std::abs(meas - prd) / prd;
        }
      }
    } catch (const std::exception& e) {
      row.status = sanitize(e.what());
      row.rel_error = kNaN;
    }
  });

  std::vector<std::string> names;
  for (const auto& r : result.rows) {
    if (std::find(names.begin(), names.end(), r.scheme) == names.end()) names.push_back(r.scheme);
  }
  for (const auto& name : names) {
    std::vector<double> eps, err;
    for (const auto& r : result.rows) {
      if (r.scheme == name && r.status == "ok" && std::abs(r.rel_error) > 0.0) {
        eps.push_back(r.epsilon);
        err.push_back(std::abs(r.rel_error));
      }
    }
    SlopeFit fit{name, kNaN, static_cast<int>(eps.size())};
    if (eps.size() >= 2) fit.slope = loglog_slope(eps, err);
    result.slopes.push_back(fit);
  }
  return result;
}

std::vector<SurveyRow> read_survey(const std::string& path) {
  const auto t = csv::read(path);
  const size_t cs = t.column("scheme"), ca = t.column("alpha"), cd = t.column("dt"), cn = t.column("n");
  const size_t ct = t.column("termination"), ctime = t.column("time"), cst = t.column("status");
  std::vector<SurveyRow> rows;
  for (const auto& r : t.rows) {
    SurveyRow row;
    row.spec.scheme = r[cs];
    row.spec.alpha = std::stod(r[ca]);
    row.spec.dt = std::stod(r[cd]);
    row.spec.n = std::stoi(r[cn]);
    row.termination = r[ct];
    row.time = std::stod(r[ctime]);
    row.status = r[cst];
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------

CommandResult cmd_simulate(const config::Config& cfg) {
  CommandResult res;
  const std::string dir = output_dir(cfg);
  const std::string hash = config_hash(cfg);

  kdv::SimulationConfig sim;
  const std::string scheme = cfg.get("scheme");
  require(!scheme.empty(), ErrorKind::Config, "empty scheme name");
  sim.scheme = schemes::scheme_by_name(scheme);
  sim.soliton.alpha = cfg.get_double("alpha", 0.00697);
  sim.soliton.c = cfg.get_double("c", 0.5);
  sim.soliton.x0 = cfg.get_double("x0", 0.0);
  sim.grid = spectral::Grid(cfg.get_double("length", 10.0), cfg.get_int("n", 512));
  sim.dt = cfg.get_double("dt");
  sim.t_max = cfg.get_double("t_max");
  if (!(sim.t_max > 0.0)) throw Error(ErrorKind::Config, "t_max must be positive");
  sim.blowup_factor = cfg.get_double("blowup_factor", 1e6);
  sim.decay_fraction = cfg.get_double("decay_fraction", 0.0);
  sim.sample_every = cfg.get_int("sample_every", 100);
  sim.track_error = cfg.get_bool("track_error", false);
  sim.snapshot_times = cfg.get_doubles("snapshot_times", {});
  const double crossing = sim.grid.length() / sim.soliton.c;
  for (double k : cfg.get_doubles("snapshot_crossings", {})) sim.snapshot_times.push_back(k * crossing);
  std::sort(sim.snapshot_times.begin(), sim.snapshot_times.end());

  std::vector<std::pair<double, double>> skew;
  kdv::SampleObserver observer;
  if (cfg.get_bool("track_skewness", false)) {
    observer = [&skew](double t, const spectral::SpectralField& u) {
      skew.emplace_back(t, diagnostics::peak_skewness(spectral::inverse_transform(u)));
    };
  }
  const auto trace = kdv::run(sim, observer);

  const std::string trace_path = join(dir, "trace.csv");
  csv::Writer w(trace_path, "trace", hash, {"t", "l2_norm", "amplitude", "peak_position"});
  w.meta("scheme", schemes::name_of(sim.scheme));
  w.meta("termination", kdv::to_string(trace.termination.kind));
  w.meta("termination_time", format(trace.termination.time));
  w.meta("steps", format(trace.steps));
  for (const auto& warning : trace.warnings) w.meta("warning", warning);
  for (size_t i = 0; i < trace.times.size(); ++i) {
    w.row({format(trace.times[i]), format(trace.l2_norms[i]), format(trace.amplitudes[i]),
           format(trace.peak_positions[i])});
  }
  w.close();
  res.files.push_back(trace_path);

  if (sim.track_error) {
    const auto series = diagnostics::error_series(trace, sim.soliton);
    const std::string path = join(dir, "errors.csv");
    csv::Writer e(path, "errors", hash, {"t", "l2_error", "phase_offset", "amplitude_ratio"});
    for (size_t i = 0; i < series.times.size(); ++i) {
      e.row({format(series.times[i]), format(series.l2_errors[i]), format(series.phase_offsets[i]),
             format(series.amplitude_ratios[i])});
    }
    e.close();
    res.files.push_back(path);
  }

  if (!skew.empty()) {
    const std::string path = join(dir, "skewness.csv");
    csv::Writer k(path, "skewness", hash, {"t", "skewness"});
    for (const auto& [t, v] : skew) k.row({format(t), format(v)});
    k.close();
    res.files.push_back(path);
  }

  for (size_t i = 0; i < trace.snapshots.size(); ++i) {
    const auto& snap = trace.snapshots[i];
    const std::string path = join(dir, "snapshot_" + std::to_string(i) + ".csv");
    csv::Writer s(path, "snapshot", hash, {"x", "u"});
    s.meta("t", format(snap.time));
    for (int j = 0; j < snap.field.grid.size(); ++j) {
      s.row({format(snap.field.grid.point(j)), format(snap.field.values[static_cast<size_t>(j)])});
    }
    s.close();
    res.files.push_back(path);
  }
  res.messages.push_back(kdv::to_string(trace.termination.kind) + " at t = " + format(trace.termination.time));
  for (const auto& warning : trace.warnings) res.messages.push_back("warning: " + warning);
  return res;
}

CommandResult cmd_survey(const config::Config& cfg) {
  CommandResult res;
  const std::string dir = output_dir(cfg);
  const auto runs = survey_runs(cfg);
  const auto rows = run_survey(runs, cfg.get_int("workers", 1));
  const std::string path = join(dir, "survey.csv");
  csv::Writer w(path, "survey", config_hash(cfg),
                {"scheme", "alpha", "dt", "n", "termination", "time", "steps", "status"});
  for (const auto& r : rows) {
    w.row({r.spec.scheme, format(r.spec.alpha), format(r.spec.dt), format(r.spec.n), r.termination, format(r.time),
           format(r.steps), r.status});
    if (r.status != "ok") res.messages.push_back("run failed: " + r.status);
  }
  w.close();
  res.files.push_back(path);
  return res;
}

CommandResult cmd_vn(const config::Config& cfg) {
  CommandResult res;
  const std::string dir = output_dir(cfg);
  const std::string hash = config_hash(cfg);
  const auto names = cfg.get_list("schemes");
  const auto dts = cfg.get_doubles("dt");
  kdv::SolitonParams p;
  p.alpha = cfg.get_double("alpha", 0.00697);
  p.c = cfg.get_double("c", 0.5);
  const double length = cfg.get_double("length", 10.0);
  const spectral::Grid grid(length, cfg.get_int("n", 256));
  const int n2 = cfg.get_int("n2", 0);
  const std::string rule_name = cfg.get("drift_rule", "below");
  require(rule_name == "below" || rule_name == "above", ErrorKind::Config, "drift_rule must be 'below' or 'above'");
  const auto rule = rule_name == "below" ? vn::DriftRule::KeepBelow : vn::DriftRule::KeepAbove;
  const double threshold = cfg.get_double("drift_threshold", 1e3);
  vn::AssemblyOptions opts;
  opts.cutoff = cfg.get_double("cutoff", 1e-16);
  opts.reference_time = cfg.get_double("reference_time", 0.0);
  const auto cutoffs = cfg.get_doubles("cutoffs", {});

  struct Job {
    std::string scheme;
    size_t dt_index;
  };
  std::vector<Job> jobs;
  for (const auto& s : names) {
    schemes::scheme_by_name(s);
    for (size_t i = 0; i < dts.size(); ++i) jobs.push_back({s, i});
  }
  std::vector<vn::EigenReport> reports(jobs.size());
  std::vector<std::vector<vn::CutoffPoint>> studies(jobs.size());
  std::vector<std::string> failures(jobs.size());
  parallel_for(jobs.size(), cfg.get_int("workers", 1), [&](size_t j) {
    try {
      const auto scheme = schemes::scheme_by_name(jobs[j].scheme);
      const double dt = dts[jobs[j].dt_index];
      reports[j] = vn::solve_spectrum(vn::assemble_evp(scheme, dt, p, grid, opts));
      if (n2 > 0) {
        const auto fine = vn::solve_spectrum(vn::assemble_evp(scheme, dt, p, spectral::Grid(length, n2), opts));
        vn::drift_filter(reports[j], fine, rule, threshold);
      }
      if (!cutoffs.empty()) studies[j] = vn::cutoff_study(scheme, dt, p, grid, cutoffs);
    } catch (const std::exception& e) {
      failures[j] = e.what();
    }
  });
  for (const auto& f : failures) {
    if (!f.empty()) throw Error(ErrorKind::Numerical, f);
  }

  const std::string summary = join(dir, "vn_summary.csv");
  csv::Writer sw(summary, "vn_summary", hash,
                 {"scheme", "alpha", "dt", "n", "block_size", "re_lambda_max", "im_lambda_max", "abs_sigma_max",
                  "rejection_fraction"});
  for (size_t j = 0; j < jobs.size(); ++j) {
    const auto& r = reports[j];
    const std::string tag = jobs[j].scheme + "_dt" + std::to_string(jobs[j].dt_index);
    const std::string path = join(dir, "eigen_" + tag + ".csv");
    csv::Writer w(path, "eigenreport", hash,
                  {"re_sigma", "im_sigma", "re_lambda", "im_lambda", "drift_ratio", "resolved"});
    w.meta("scheme", r.scheme);
    w.meta("alpha", format(r.alpha));
    w.meta("dt", format(r.dt));
    w.meta("n", format(r.grid_size));
    w.meta("block_size", format(r.block_size));
    for (size_t i = 0; i < r.sigmas.size(); ++i) {
      const double drift = r.drift_ratios.empty() ? kNaN : r.drift_ratios[i];
      w.row({format(r.sigmas[i].real()), format(r.sigmas[i].imag()), format(r.lambdas[i].real()),
             format(r.lambdas[i].imag()), format(drift), r.resolved[i] ? "1" : "0"});
    }
    w.close();
    res.files.push_back(path);
    const auto [sigma, lambda] = r.fastest();
    sw.row({r.scheme, format(r.alpha), format(r.dt), format(r.grid_size), format(r.block_size),
            format(lambda.real()), format(lambda.imag()), format(std::abs(sigma)),
            format(vn::rejection_fraction(r))});
    if (!studies[j].empty()) {
      const std::string cpath = join(dir, "cutoff_" + tag + ".csv");
      csv::Writer cw(cpath, "cutoff_study", hash, {"cutoff", "re_lambda", "im_lambda", "error"});
      for (const auto& c : studies[j]) {
        cw.row({format(c.cutoff), format(c.lambda_max.real()), format(c.lambda_max.imag()), format(c.error)});
      }
      cw.close();
      res.files.push_back(cpath);
    }
  }
  sw.close();
  res.files.push_back(summary);
  return res;
}

CommandResult cmd_regions(const config::Config& cfg) {
  CommandResult res;
  const std::string dir = output_dir(cfg);
  const std::string hash = config_hash(cfg);
  const auto zim = regions::linspace(cfg.get_double("zim_min", -3.0), cfg.get_double("zim_max", 3.0),
                                     cfg.get_int("zim_count", 400));
  const auto zex = regions::linspace(cfg.get_double("zex_min", -3.0), cfg.get_double("zex_max", 3.0),
                                     cfg.get_int("zex_count", 400));
  for (const auto& name : cfg.get_list("schemes")) {
    const auto raster = regions::region_scan(schemes::scheme_by_name(name), zim, zex);
    const std::string path = join(dir, "region_" + name + ".csv");
    csv::Writer w(path, "region", hash, {"im_zim", "im_zex", "max_sigma"});
    w.meta("scheme", name);
    for (size_t r = 0; r < zex.size(); ++r) {
      for (size_t c = 0; c < zim.size(); ++c) {
        const auto v = raster.at(r, c);
        w.row({format(zim[c]), format(zex[r]), v ? format(*v) : std::string()});
      }
    }
    w.close();
    res.files.push_back(path);
  }
  return res;
}

CommandResult cmd_predict(const config::Config& cfg) {
  CommandResult res;
  const std::string dir = output_dir(cfg);
  const std::string hash = config_hash(cfg);
  const auto domain = parse_domain(cfg.get("domain", "finite"));
  const auto alphas = cfg.get_doubles("alpha", {0.00697});
  const auto dts = cfg.get_doubles("dt");
  const double c0 = cfg.get_double("c", 0.5);
  const double length = cfg.get_double("length", 10.0);
  multiscale::SlowOdeOptions opts;
  opts.decay_fraction = cfg.get_double("decay_fraction", 0.9);
  opts.samples = cfg.get_int("samples", 200);
  opts.quadrature = cfg.get_int("quadrature", 4096);

  const std::string summary = join(dir, "predictions.csv");
  csv::Writer sw(summary, "predictions", hash, {"scheme", "alpha", "dt", "epsilon", "domain", "endpoint", "time"});
  for (const auto& name : cfg.get_list("schemes")) {
    const auto scheme = schemes::scheme_by_name(name);
    for (size_t a = 0; a < alphas.size(); ++a) {
      for (size_t d = 0; d < dts.size(); ++d) {
        const auto used = effective_domain(scheme, domain);
        if (used != domain && a == 0 && d == 0) res.messages.push_back(name + ": using the infinite-domain closed form");
        const auto pred = multiscale::integrate_slow_ode(scheme, alphas[a], dts[d], c0, length, used, opts);
        const std::string path =
            join(dir, "prediction_" + name + "_a" + std::to_string(a) + "_dt" + std::to_string(d) + ".csv");
        csv::Writer w(path, "prediction", hash, {"t", "c", "predicted_l2"});
        w.meta("scheme", pred.scheme);
        w.meta("domain", multiscale::to_string(pred.domain));
        w.meta("endpoint", multiscale::to_string(pred.endpoint));
        w.meta("endpoint_time", format(pred.endpoint_time));
        if (pred.endpoint == multiscale::EndpointKind::Decay) w.meta("fraction", format(pred.fraction));
        w.meta("epsilon", format(pred.epsilon));
        w.meta("m", format(pred.m));
        for (size_t i = 0; i < pred.times.size(); ++i) {
          w.row({format(pred.times[i]), format(pred.c_values[i]),
                 format(multiscale::predicted_l2(pred, pred.times[i], opts.quadrature))});
        }
        w.close();
        res.files.push_back(path);
        sw.row({name, format(alphas[a]), format(dts[d]), format(pred.epsilon), multiscale::to_string(pred.domain),
                multiscale::to_string(pred.endpoint), format(pred.endpoint_time)});
      }
    }
  }
  sw.close();
  res.files.push_back(summary);
  return res;
}

CommandResult cmd_compare(const config::Config& cfg) {
  CommandResult res;
  const std::string dir = output_dir(cfg);
  const std::string hash = config_hash(cfg);
  std::vector<SurveyRow> measured;
  if (cfg.has("survey")) measured = read_survey(cfg.get("survey"));
  const auto result =
      run_compare(survey_runs(cfg), cfg.get_int("workers", 1), parse_domain(cfg.get("domain", "finite")), measured);

  const std::string path = join(dir, "compare.csv");
  csv::Writer w(path, "compare", hash,
                {"epsilon", "alpha", "dt", "scheme", "domain", "endpoint", "t_measured", "t_predicted", "rel_error",
                 "l2_rel_error_005", "l2_rel_error_05", "status"});
  for (const auto& r : result.rows) {
    w.row({format(r.epsilon), format(r.alpha), format(r.dt), r.scheme, multiscale::to_string(r.domain), r.endpoint,
           format(r.t_measured), format(r.t_predicted), format(r.rel_error), format(r.l2_rel_error_005),
           format(r.l2_rel_error_05), r.status});
    if (r.status != "ok") res.messages.push_back("comparison failed: " + r.status);
  }
  w.close();
  res.files.push_back(path);

  const std::string spath = join(dir, "compare_slopes.csv");
  csv::Writer sw(spath, "compare_slopes", hash, {"scheme", "slope", "points"});
  for (const auto& s : result.slopes) {
    sw.row({s.scheme, format(s.slope), format(s.points)});
    res.messages.push_back(s.scheme + ": epsilon slope " + format(s.slope) + " over " + std::to_string(s.points) +
                           " points");
  }
  sw.close();
  res.files.push_back(spath);
  return res;
}

}  // namespace kdvlab::experiments
