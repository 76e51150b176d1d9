#include "experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mgt/blocks.hpp"
#include "mgt/errors.hpp"
#include "mgt/io.hpp"
#include "mgt/linalg.hpp"
#include "mgt/semigroup.hpp"

namespace mgt::cli {

namespace {

constexpr std::array<std::pair<const char*, Experiment>, 7> kExperiments{{
    {"spectrum", Experiment::Spectrum},
    {"regime", Experiment::Regime},
    {"resolvent-scan", Experiment::ResolventScan},
    {"illposed-demo", Experiment::IllposedDemo},
    {"smoothing", Experiment::Smoothing},
    {"evolve", Experiment::Evolve},
    {"dissipativity", Experiment::Dissipativity},
}};

// Pairs each closed-form value with a dense-solver eigenvalue: the permutation with the
// smallest worst-case distance.
std::vector<Complex> match_to(const std::vector<Complex>& closed, std::vector<Complex> oracle) {
  std::sort(oracle.begin(), oracle.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  std::vector<Complex> best = oracle;
  double best_err = std::numeric_limits<double>::infinity();
  do {
    double err = 0.0;
    for (std::size_t k = 0; k < closed.size(); ++k) err = std::max(err, std::abs(closed[k] - oracle[k]));
    if (err < best_err) {
      best_err = err;
      best = oracle;
    }
  } while (std::next_permutation(oracle.begin(), oracle.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  }));
  return best;
}

std::string row(std::initializer_list<std::string> cells) {
  std::string out;
  for (const std::string& c : cells) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out + '\n';
}

std::string fmt(double x) { return format_double(x); }

SpectralState initial_state(const ExperimentConfig& cfg, const EigenSequence& eigs) {
  SpectralState natural = SpectralState::zeros(eigs.size(), Coords::Natural);
  if (cfg.init == "mode1") {
    natural.u[0] = 1.0;
  } else if (cfg.init == "random") {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss;
    for (std::size_t n = 0; n < eigs.size(); ++n) {
      const double decay = 1.0 / static_cast<double>((n + 1) * (n + 1));
      const auto i = static_cast<Eigen::Index>(n);
      natural.u[i] = gauss(rng) * decay;
      natural.v[i] = gauss(rng) * decay;
      natural.w[i] = gauss(rng) * decay;
    }
  } else {
    throw InvalidArgument("--init must be mode1 or random, got '" + cfg.init + "'");
  }
  SpectralState reduced = natural_to_reduced(natural, eigs);
  const double norm = z_norm(reduced, eigs);
  const double scale = norm > 0.0 ? cfg.amplitude / norm : 0.0;
  reduced.u *= scale;
  reduced.v *= scale;
  reduced.w *= scale;
  return reduced;
}

void write_text(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InvalidArgument("cannot open output file '" + path + "'");
  file << text;
  if (!file) throw InvalidArgument("failed writing output file '" + path + "'");
}

double require_eta(const ExperimentConfig& cfg) {
  if (!cfg.eta) throw InvalidArgument("missing required flag --eta");
  return *cfg.eta;
}

}  // namespace

std::optional<Experiment> parse_experiment(const std::string& name) {
  for (const auto& [key, value] : kExperiments) {
    if (name == key) return value;
  }
  return std::nullopt;
}

std::string to_string(Experiment e) {
  for (const auto& [key, value] : kExperiments) {
    if (e == value) return key;
  }
  return "?";
}

std::string spectrum_csv(double eta, const EigenSequence& eigs) {
  std::string out = "mode,mu,branch,re,im,oracle_re,oracle_im,abs_error\n";
  struct Branches {
    BlockKind kind;
    std::array<const char*, 3> names;
  };
  const std::array<Branches, 2> kinds{{{BlockKind::NaturalA, {"A:-a", "A:-z*a", "A:-zbar*a"}},
                                       {BlockKind::ReducedB, {"B:-a", "B:-c*a", "B:-d*a"}}}};
  for (const Branches& b : kinds) {
    const std::vector<Complex> closed = closed_form_spectrum(b.kind, eta, eigs);
    for (std::size_t n = 0; n < eigs.size(); ++n) {
      const std::vector<Complex> mine(closed.begin() + 3 * n, closed.begin() + 3 * n + 3);
      const CMatrix minus = -mode_block(b.kind, eta, eigs[n]).matrix;
      const std::vector<Complex> oracle = match_to(mine, dense_eigenvalues(minus));
      for (std::size_t k = 0; k < 3; ++k) {
        out += row({std::to_string(n + 1), fmt(eigs[n]), b.names[k], fmt(mine[k].real()), fmt(mine[k].imag()),
                    fmt(oracle[k].real()), fmt(oracle[k].imag()), fmt(std::abs(mine[k] - oracle[k]))});
      }
    }
  }
  return out;
}

std::string resolvent_scan_csv(double eta, const EigenSequence& eigs) {
  const std::array<double, 2> angles{3.0 * std::numbers::pi / 4.0, -3.0 * std::numbers::pi / 4.0};
  std::vector<double> radii;
  for (int k = 0; k <= 16; ++k) radii.push_back(std::pow(10.0, 0.25 * k));
  const SectorScan scan = sector_scan(eta, eigs, angles, radii);
  std::string out = "arg,r,M_local\n";
  for (const SectorSample& s : scan.samples) out += row({fmt(s.arg), fmt(s.radius), fmt(s.m_local)});
  return out;
}

std::string illposed_demo_csv(double eta, const EigenSequence& eigs) {
  const std::vector<RateRow> rows = rate_scan(BlockKind::NaturalA, eta, eigs);
  std::string out = "mode,predicted_rate,measured_rate\n";
  for (const RateRow& r : rows) {
    out += row({std::to_string(r.mode_index), fmt(r.re_rate_predicted), fmt(r.re_rate_measured)});
  }
  return out;
}

std::string smoothing_csv(double eta, double alpha, const EigenSequence& eigs) {
  std::string out = "t,alpha,weighted_sup\n";
  for (int k = 0; k <= 12; ++k) {
    const double t = std::pow(10.0, -3.0 + 0.25 * k);
    out += row({fmt(t), fmt(alpha), fmt(smoothing_constant(eta, alpha, t, eigs))});
  }
  return out;
}

std::string dissipativity_json(double mu) {
  nlohmann::ordered_json j;
  j["mu"] = mu;
  j["u"] = nlohmann::ordered_json::array({1.0, 0.0});
  j["witness"] = dissipativity_witness(mu, 1.0);
  return j.dump(2) + "\n";
}

int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.n_modes < 1) throw InvalidArgument("--n-modes must be >= 1");
    if (!(cfg.length > 0.0)) throw InvalidArgument("--length must be > 0");
    const EigenSequence eigs = dirichlet_eigs(cfg.n_modes, cfg.length);

    std::string text;
    switch (cfg.experiment) {
      case Experiment::Spectrum:
        text = spectrum_csv(require_eta(cfg), eigs);
        break;
      case Experiment::Regime: {
        RegimeReport report = classify(require_eta(cfg), cfg.n_modes);
        report.growth = growth_abscissa(report.eta, eigs);
        text = regime_report_json(report);
        break;
      }
      case Experiment::ResolventScan:
        text = resolvent_scan_csv(require_eta(cfg), eigs);
        break;
      case Experiment::IllposedDemo:
        text = illposed_demo_csv(require_eta(cfg), eigs);
        break;
      case Experiment::Smoothing:
        text = smoothing_csv(require_eta(cfg), cfg.alpha, eigs);
        break;
      case Experiment::Evolve: {
        const double eta = require_eta(cfg);
        const Trajectory traj = etd_solve(initial_state(cfg, eigs), eta, cfg.nonlinearity, cfg.solver, eigs);
        text = trajectory_csv(traj);
        if (!cfg.states_json_path.empty()) write_text(trajectory_states_json(traj), cfg.states_json_path, out);
        break;
      }
      case Experiment::Dissipativity:
        if (!cfg.mu) throw InvalidArgument("missing required flag --mu");
        text = dissipativity_json(*cfg.mu);
        break;
    }
    write_text(text, cfg.output_path, out);
    return kOk;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const NearSingular& e) {
    err << "numerical failure: " << e.what() << " (spectral value " << format_double(e.spectral_value().real())
        << (e.spectral_value().imag() < 0 ? "" : "+") << format_double(e.spectral_value().imag()) << "i)\n";
    return kNumericalFailure;
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral experiments for u_ttt + A u + eta A^{1/3} u_tt + eta A^{2/3} u_t = f(u)", "mgt"};
  app.set_config("--config", "", "key=value file; command-line flags take precedence");

  std::string experiment;
  std::optional<double> eta, mu;
  ExperimentConfig cfg;
  std::string nonlinearity = "zero", scheme = "etd2";
  double kappa = 1.0, rho = 3.0;

  app.add_option("experiment", experiment,
                 "spectrum | regime | resolvent-scan | illposed-demo | smoothing | evolve | dissipativity")
      ->required();
  app.add_option("--eta", eta, "damping parameter eta >= 0");
  app.add_option("--n-modes", cfg.n_modes, "number of Dirichlet modes")->capture_default_str();
  app.add_option("--length", cfg.length, "interval length L")->capture_default_str();
  app.add_option("--output,-o", cfg.output_path, "output file (default: standard output)");
  app.add_option("--seed", cfg.seed, "seed for randomized initial data")->capture_default_str();
  app.add_option("--alpha", cfg.alpha, "smoothing exponent in [0, 1]")->capture_default_str();
  app.add_option("--mu", mu, "eigenvalue for the dissipativity witness");
  app.add_option("--nonlinearity", nonlinearity, "zero | cubic | power")->capture_default_str();
  app.add_option("--kappa", kappa, "nonlinearity coefficient")->capture_default_str();
  app.add_option("--rho", rho, "exponent of the power nonlinearity")->capture_default_str();
  app.add_option("--dt", cfg.solver.dt, "time step")->capture_default_str();
  app.add_option("--t-final", cfg.solver.t_final, "final time")->capture_default_str();
  app.add_option("--scheme", scheme, "etd1 | etd2")->capture_default_str();
  app.add_option("--blowup-threshold", cfg.solver.blowup_threshold, "Z-norm blow-up threshold")
      ->capture_default_str();
  app.add_option("--record-every", cfg.solver.record_every, "record every k-th step")->capture_default_str();
  app.add_option("--init", cfg.init, "mode1 | random")->capture_default_str();
  app.add_option("--amplitude", cfg.amplitude, "Z norm of the initial state")->capture_default_str();
  app.add_option("--states-json", cfg.states_json_path, "also write full states as JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  const std::optional<Experiment> which = parse_experiment(experiment);
  if (!which) {
    err << "config error: unknown experiment '" << experiment << "'\n";
    return kConfigError;
  }
  cfg.experiment = *which;
  cfg.eta = eta;
  cfg.mu = mu;

  if (scheme == "etd1") {
    cfg.solver.scheme = Scheme::ETD1;
  } else if (scheme == "etd2") {
    cfg.solver.scheme = Scheme::ETD2;
  } else {
    err << "config error: --scheme must be etd1 or etd2, got '" << scheme << "'\n";
    return kConfigError;
  }

  try {
    if (nonlinearity == "zero") {
      cfg.nonlinearity = Nonlinearity::zero();
    } else if (nonlinearity == "cubic") {
      cfg.nonlinearity = Nonlinearity::cubic(kappa);
    } else if (nonlinearity == "power") {
      cfg.nonlinearity = Nonlinearity::power_sign(kappa, rho);
    } else {
      throw InvalidArgument("--nonlinearity must be zero, cubic or power, got '" + nonlinearity + "'");
    }
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  return run(cfg, out, err);
}

}  // namespace mgt::cli
