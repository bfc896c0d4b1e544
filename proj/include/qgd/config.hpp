#pragma once

// JSON run configuration shared by the command-line subcommands.

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "qgd/core.hpp"
#include "qgd/experiments.hpp"

namespace qgd {

struct GasConfig {
  double p1 = 1.0;
  double gamma = 2.0;

  GasModel model() const { return GasModel::isentropic(p1, gamma); }
  bool operator==(const GasConfig&) const = default;
};

struct SchemeBlock {
  SchemeKind kind = SchemeKind::Enthalpy;
  Regularization variant = Regularization::FullQGD;
  double alpha = 0.4;
  double alpha_s = 4.0 / 3.0;
  double beta = 0.589;
  /// Empty selects sqrt(p'(max initial rho)).
  std::optional<double> c_ref;
  TimeStepRule time_step = TimeStepRule::FixedReference;

  bool operator==(const SchemeBlock&) const = default;
};

struct ExperimentBlock {
  PrimitiveState left{1.0, 0.1};
  PrimitiveState right{0.1, 0.0};
  double x0 = 0.0;
  double t_end = 0.5;
  int record_every = 25;

  bool operator==(const ExperimentBlock&) const = default;
};

struct SweepBlock {
  std::vector<double> alphas;
  std::vector<double> betas;
  int workers = 1;

  bool operator==(const SweepBlock&) const = default;
};

struct OutputBlock {
  std::string directory = "out";
  bool csv = true;
  bool svg = true;

  bool operator==(const OutputBlock&) const = default;
};

struct RunConfig {
  GasConfig gas;
  SchemeBlock scheme;
  Mesh mesh{250, 1.0 / 125.0, -1.0, Boundary::CopyOutflow};
  ExperimentBlock experiment;
  SweepBlock sweep;
  ClassifierThresholds classifier;
  OutputBlock output;

  /// Riemann setup spanning [x_min, x_min + n h].
  RiemannSetup riemann() const;
  /// Scheme parameters with c_ref resolved.
  SchemeConfig scheme_config() const;
  SweepOptions sweep_options() const;

  bool operator==(const RunConfig&) const = default;
};

/// The flagship configuration: enthalpy scheme, p = rho^2, kappa = 7/3,
/// h = 1/125, t_end = 0.5, alpha in {0.2, ..., 1.0}.
RunConfig default_config();

/// Validates every block; unknown keys and out-of-range values raise
/// Error(Config) with the JSON path and, when `source` is given, the line.
RunConfig parse_config(const nlohmann::json& doc, const std::string& source_text = {},
                       const std::string& source_name = "config");
RunConfig parse_config_text(const std::string& text, const std::string& source_name = "config");
RunConfig load_config(const std::string& path);

nlohmann::json to_json(const RunConfig& config);

/// Applies "a.b.c=value" overrides; the value is read as JSON when it parses,
/// otherwise as a string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

}  // namespace qgd
