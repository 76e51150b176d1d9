#pragma once

// Named experiments behind the `mgt` command line tool.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mgt/nonlinear.hpp"
#include "mgt/solver.hpp"

namespace mgt::cli {

enum class Experiment { Spectrum, Regime, ResolventScan, IllposedDemo, Smoothing, Evolve, Dissipativity };

std::optional<Experiment> parse_experiment(const std::string& name);
std::string to_string(Experiment e);

struct ExperimentConfig {
  Experiment experiment = Experiment::Regime;
  std::optional<double> eta;
  int n_modes = 64;
  double length = 3.14159265358979323846;
  std::string output_path;  ///< empty: standard output
  std::uint64_t seed = 0;

  // smoothing
  double alpha = 0.5;
  // dissipativity
  std::optional<double> mu;
  // evolve
  Nonlinearity nonlinearity;
  SolverConfig solver;
  std::string init = "mode1";  ///< mode1 | random
  double amplitude = 0.1;
  std::string states_json_path;
};

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 1;
inline constexpr int kNumericalFailure = 2;

/// Runs one experiment and writes its artifact to cfg.output_path (or `out`). Library
/// errors are mapped to exit codes with a one-line diagnostic on `err`.
int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses `mgt <experiment> [flags]` (flags may also come from a key=value file given with
/// --config; command-line flags win) and calls run().
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The text each experiment produces; exposed for tests.
std::string spectrum_csv(double eta, const EigenSequence& eigs);
std::string resolvent_scan_csv(double eta, const EigenSequence& eigs);
std::string illposed_demo_csv(double eta, const EigenSequence& eigs);
std::string smoothing_csv(double eta, double alpha, const EigenSequence& eigs);
std::string dissipativity_json(double mu);

}  // namespace mgt::cli
