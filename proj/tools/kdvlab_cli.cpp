// kdvlab command-line driver.
//
// Every subcommand reads a flat config file (--config), then applies overrides from
// named flags and repeated --set key=value. Errors go to stderr as
//   error[<category>]: <message>
// with a category-specific exit code.

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "kdvlab/error.hpp"
#include "kdvlab/experiments.hpp"

namespace {

using kdvlab::ErrorKind;
using kdvlab::config::Config;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return 2;
    case ErrorKind::Config: return 3;
    case ErrorKind::Io: return 4;
    case ErrorKind::Numerical: return 5;
    case ErrorKind::NotAvailable: return 6;
    case ErrorKind::NonFiniteData: return 7;
    case ErrorKind::GridMismatch: return 8;
  }
  return 1;
}

struct Options {
  std::string config_path;
  std::vector<std::string> sets;
  std::string out;
  // flag name -> value; only flags actually given are applied
  std::map<std::string, std::string> flags;
  bool quiet = false;
};

using Command = std::function<kdvlab::experiments::CommandResult(const Config&)>;

void add_flag(CLI::App* app, Options& opts, const std::string& flag, const std::string& key,
              const std::string& help) {
  app->add_option_function<std::string>(
      flag, [&opts, key](const std::string& v) { opts.flags[key] = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"KdV soliton IMEX timestepping instability lab"};
  app.require_subcommand(1);
  Options opts;

  const std::vector<std::pair<std::string, Command>> commands = {
      {"simulate", kdvlab::experiments::cmd_simulate}, {"survey", kdvlab::experiments::cmd_survey},
      {"vn", kdvlab::experiments::cmd_vn},             {"regions", kdvlab::experiments::cmd_regions},
      {"predict", kdvlab::experiments::cmd_predict},   {"compare", kdvlab::experiments::cmd_compare},
  };
  const std::map<std::string, std::string> descriptions = {
      {"simulate", "Single soliton run; writes trace, error and snapshot CSVs"},
      {"survey", "Blow-up/decay times over a scheme x alpha x dt x n grid"},
      {"vn", "Von Neumann eigenspectra about the travelling soliton"},
      {"regions", "IMEX stability rasters on the imaginary test plane"},
      {"predict", "Multiple-scales trajectories and endpoints"},
      {"compare", "Measured endpoints against multiple-scales predictions"},
  };

  Command selected;
  for (const auto& [name, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, descriptions.at(name));
    sub->add_option("-c,--config", opts.config_path, "Config file (key = value lines)");
    sub->add_option("-s,--set", opts.sets, "Override a config key, key=value (repeatable)");
    sub->add_option("-o,--out", opts.out, "Output directory (config key 'output')");
    sub->add_flag("-q,--quiet", opts.quiet, "Do not list written files");
    add_flag(sub, opts, "--scheme", "scheme", "Scheme name (simulate)");
    add_flag(sub, opts, "--schemes", "schemes", "Comma-separated scheme list");
    add_flag(sub, opts, "--alpha", "alpha", "Dispersion coefficient(s)");
    add_flag(sub, opts, "--dt", "dt", "Timestep(s)");
    add_flag(sub, opts, "--n", "n", "Grid size(s)");
    add_flag(sub, opts, "--t-max", "t_max", "Final time");
    add_flag(sub, opts, "--workers", "workers", "Parallel runs");
    add_flag(sub, opts, "--domain", "domain", "finite or infinite (predict, compare)");
    sub->callback([&selected, fn = fn] { selected = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    Config cfg = opts.config_path.empty() ? Config{} : Config::load(opts.config_path);
    for (const auto& [key, value] : opts.flags) cfg.set(key, value);
    for (const auto& s : opts.sets) cfg.set_assignment(s);
    if (!opts.out.empty()) cfg.set("output", opts.out);
    const auto result = selected(cfg);
    for (const auto& m : result.messages) std::cerr << m << '\n';
    if (!opts.quiet) {
      for (const auto& f : result.files) std::cout << f << '\n';
    }
    return 0;
  } catch (const kdvlab::Error& e) {
    std::cerr << "error[" << kdvlab::to_string(e.kind()) << "]: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << '\n';
    return 1;
  }
}
