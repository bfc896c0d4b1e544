// qgd: solver and stability analyzer for regularized barotropic gas dynamics.
//
//   qgd solve     [--config FILE] [key.path=value ...]
//   qgd stability --alpha A --beta B (--kappa K | --alpha-s S) [--variant qgd|qhd]
//   qgd sweep     [--config FILE] [key.path=value ...]
//   qgd verify    [--config FILE] [key.path=value ...]
//
// Exit codes: 0 success, 1 configuration or input error, 2 overflow (solve)
// or failed suite (verify).

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qgd/config.hpp"
#include "qgd/experiments.hpp"
#include "qgd/output.hpp"
#include "qgd/schemes.hpp"
#include "qgd/spectral.hpp"
#include "qgd/verify.hpp"

namespace fs = std::filesystem;
using namespace qgd;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitOverflow = 2;

RunConfig resolve_config(const std::string& path, const std::vector<std::string>& overrides) {
  nlohmann::json doc = nlohmann::json::object();
  std::string text;
  std::string source = "defaults";
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Config, path + ": cannot open");
    std::stringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
    source = path;
    // Parse through the text path first so syntax errors carry line numbers.
    parse_config_text(text, source);
    doc = nlohmann::json::parse(text);
  }
  for (const auto& o : overrides) apply_override(doc, o);
  auto config = parse_config(doc, overrides.empty() ? text : std::string{}, source);
  if (const char* env = std::getenv("QGD_WORKERS")) {
    try {
      const int workers = std::stoi(env);
      if (workers < 1) throw std::invalid_argument("workers");
      config.sweep.workers = workers;
    } catch (const std::exception&) {
      throw Error(ErrorCode::Config, std::string("QGD_WORKERS: expected a positive integer, got '") +
                                         env + "'");
    }
  }
  return config;
}

int cmd_solve(const RunConfig& config) {
  const auto model = config.gas.model();
  const auto setup = config.riemann();
  const Mesh mesh = config.mesh;
  const auto cfg = config.scheme_config();
  const auto initial = riemann_initial(setup, mesh);
  const auto traj = run_simulation(initial, mesh, model, cfg, setup.t_end,
                                   config.experiment.record_every);
  const auto verdict = classify_run(traj, config.classifier);

  const fs::path dir = config.output.directory;
  if (config.output.csv) {
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "snapshot_%04zu.csv", i);
      write_file_atomic(dir / name, snapshot_csv(traj.snapshots[i].state, mesh));
    }
    write_file_atomic(dir / "diagnostics.csv", diagnostics_csv(traj));
  }
  if (config.output.svg) {
    std::ostringstream title;
    title << to_string(cfg.scheme) << " scheme, alpha = " << cfg.alpha << ", beta = " << cfg.beta;
    write_file_atomic(dir / "profile.svg", profile_svg(traj, mesh, title.str()));
  }

  std::cout << "scheme " << to_string(cfg.scheme) << " (" << to_string(cfg.regularization)
            << "), alpha = " << cfg.alpha << ", alpha_s = " << cfg.alpha_s << ", beta = " << cfg.beta
            << ", c_ref = " << cfg.c_ref << " (" << to_string(cfg.time_step_rule) << ")\n"
            << "steps " << traj.steps << ", t = " << traj.snapshots.back().t << "\n"
            << "classification " << to_string(verdict.classification) << ", oscillation score "
            << verdict.oscillation_score << "\n"
            << "outputs in " << dir.string() << "\n";
  return verdict.classification == Classification::Overflow ? kExitOverflow : 0;
}

struct StabilityArgs {
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<double> kappa;
  std::optional<double> alpha_s;
  std::string variant = "qgd";
  int samples = kDefaultXiSamples;
  std::string csv;
};

int cmd_stability(const StabilityArgs& args) {
  Regularization variant;
  if (args.variant == "qgd") {
    variant = Regularization::FullQGD;
  } else if (args.variant == "qhd") {
    variant = Regularization::SimplifiedQHD;
  } else {
    throw Error(ErrorCode::InvalidArgument, "variant must be qgd or qhd");
  }
  if (args.kappa.has_value() == args.alpha_s.has_value()) {
    throw Error(ErrorCode::InvalidArgument, "give exactly one of --kappa and --alpha-s");
  }
  const LinearizedParams params =
      args.kappa ? LinearizedParams{args.alpha, args.beta, *args.kappa, variant}
                 : LinearizedParams::from_viscosity(args.alpha, args.beta, *args.alpha_s, variant);
  params.validate();
  const bool sw = variant == Regularization::FullQGD && is_shallow_water_kappa(params.kappa);
  const auto v = evaluate_stability(params, sw, args.samples);
  const auto best = optimal_alpha(params.kappa, variant);

  auto yes = [](bool b) { return b ? "true" : "false"; };
  std::printf("alpha = %g, beta = %g, kappa = %g, variant = %s\n", params.alpha, params.beta,
              params.kappa, to_string(variant));
  std::printf("%-12s %-8s %s\n", "condition", "holds", "beta threshold");
  std::printf("%-12s %-8s %.10g\n", "necessary", yes(v.necessary_ok), v.necessary_threshold);
  std::printf("%-12s %-8s %.10g\n", "criterion", yes(v.criterion_ok), v.criterion_threshold);
  if (v.sufficient_ok) {
    std::printf("%-12s %-8s %.10g\n", "sufficient", yes(*v.sufficient_ok), *v.sufficient_threshold);
  } else {
    std::printf("%-12s %-8s %s\n", "sufficient", "-", "(known only for p = rho^2, kappa = 7/3)");
  }
  if (best) {
    std::printf("optimal alpha = %.10g, beta_max = %.10g\n", best->alpha, best->beta_max);
  } else {
    std::printf("no stable beta: the criterion admits no beta > 0 for this kappa\n");
  }
  std::printf("oracle (%d xi samples): max |lambda(G)| = %.15g, max lambda(G*G) = %.15g\n",
              args.samples, v.oracle_spectral_radius, v.oracle_gram_max);
  if (!args.csv.empty()) write_file_atomic(args.csv, verdict_csv({{params, v}}));
  return 0;
}

int cmd_sweep(const RunConfig& config) {
  const auto model = config.gas.model();
  const auto options = config.sweep_options();
  const auto map =
      sweep_region(config.riemann(), model, options, config.sweep.alphas, config.sweep.betas);
  const fs::path dir = config.output.directory;
  if (config.output.csv) {
    write_file_atomic(dir / "region.csv", region_csv(map));
    write_file_atomic(dir / "overlays.csv", overlay_csv(map));
  }
  if (config.output.svg) {
    std::ostringstream title;
    title << to_string(options.scheme) << " scheme, kappa = " << map.kappa;
    write_file_atomic(dir / "region.svg", region_svg(map, options.variant, title.str()));
  }
  std::cout << format_transition_report(compare_transition(map));
  std::cout << "outputs in " << dir.string() << "\n";
  return 0;
}

int cmd_verify(const RunConfig& config) {
  bool all = true;
  for (const auto& r : run_verification(config)) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    all = all && r.passed;
  }
  return all ? 0 : kExitOverflow;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularized explicit schemes for 1D barotropic gas dynamics"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  auto add_config_options = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "JSON configuration file");
    sub->add_option("overrides", overrides, "key.path=value overrides");
  };

  auto* solve = app.add_subcommand("solve", "run one Riemann simulation");
  add_config_options(solve);
  auto* sweep = app.add_subcommand("sweep", "classify runs over an (alpha, beta) grid");
  add_config_options(sweep);
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  add_config_options(verify);

  StabilityArgs sargs;
  auto* stability = app.add_subcommand("stability", "closed-form and oracle stability verdicts");
  stability->add_option("--alpha", sargs.alpha, "regularization strength")->required();
  stability->add_option("--beta", sargs.beta, "Courant-like number")->required();
  stability->add_option("--kappa", sargs.kappa, "effective viscosity coefficient");
  stability->add_option("--alpha-s", sargs.alpha_s, "viscosity factor");
  stability->add_option("--variant", sargs.variant, "qgd or qhd");
  stability->add_option("--samples", sargs.samples, "xi samples for the oracle")
      ->check(CLI::Range(64, 1 << 22));
  stability->add_option("--csv", sargs.csv, "write the verdict row to this CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  try {
    if (stability->parsed()) return cmd_stability(sargs);
    const auto config = resolve_config(config_path, overrides);
    if (solve->parsed()) return cmd_solve(config);
    if (sweep->parsed()) return cmd_sweep(config);
    return cmd_verify(config);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
