#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qgd/core.hpp"
#include "qgd/schemes.hpp"

namespace qgd {

struct PrimitiveState {
  double rho;
  double u;

  bool operator==(const PrimitiveState&) const = default;
};

struct RiemannSetup {
  PrimitiveState left{1.0, 0.1};
  PrimitiveState right{0.1, 0.0};
  double x0 = 0.0;
  double x_min = -1.0;
  double x_max = 1.0;
  double h = 1.0 / 125.0;
  double t_end = 0.5;

  void validate() const;
  /// CopyOutflow mesh with N = round((x_max - x_min) / h) nodes from x_min.
  Mesh mesh() const;
  /// sqrt(p'(max(rho_L, rho_R))), the fastest initial sound speed.
  double default_c_ref(const GasModel& model) const;
  RiemannSetup mirrored() const;

  bool operator==(const RiemannSetup&) const = default;
};

/// Step-function data; a node exactly at x0 takes the left state.
MeshState riemann_initial(const RiemannSetup& setup, const Mesh& mesh);

enum class Classification { Conservative, NonConservative, Overflow };

const char* to_string(Classification c) noexcept;

struct ClassifierThresholds {
  double tv_ratio = 1.5;
  /// Corridor [low * min(rho_L, rho_R), high * max(rho_L, rho_R)].
  double corridor_low = 0.5;
  double corridor_high = 2.0;

  bool operator==(const ClassifierThresholds&) const = default;
};

struct RunVerdict {
  Classification classification = Classification::Conservative;
  double oscillation_score = 0.0;
  bool completed = false;
};

/// Oscillation score = max over recorded steps of TV(rho) / TV(rho at t=0),
/// defined as 0 when the initial total variation and every later one are 0.
RunVerdict classify_run(const Trajectory& traj, const ClassifierThresholds& thresholds);

struct Overlays {
  std::vector<double> necessary;
  std::vector<double> criterion;
  /// Present only for p = rho^2 with kappa = 7/3.
  std::optional<std::vector<double>> sufficient;
};

struct RegionMap {
  std::vector<double> alphas;
  std::vector<double> betas;
  /// verdicts[i * betas.size() + j] belongs to (alphas[i], betas[j]).
  std::vector<RunVerdict> verdicts;
  Overlays overlays;
  double kappa = 0.0;

  const RunVerdict& at(std::size_t i, std::size_t j) const {
    return verdicts[i * betas.size() + j];
  }
};

struct SweepOptions {
  SchemeKind scheme = SchemeKind::Enthalpy;
  Regularization variant = Regularization::FullQGD;
  double alpha_s = 4.0 / 3.0;
  /// Zero or negative selects RiemannSetup::default_c_ref.
  double c_ref = 0.0;
  TimeStepRule time_step_rule = TimeStepRule::FixedReference;
  ClassifierThresholds thresholds;
  int workers = 1;
};

/// Runs one Riemann simulation at (alpha, beta) and classifies it.
RunVerdict run_riemann_cell(const RiemannSetup& setup, const GasModel& model,
                            const SweepOptions& options, double alpha, double beta);

/// Each (alpha, beta) cell is an independent simulation; results land in
/// pre-sized slots so the map does not depend on the worker count.
RegionMap sweep_region(const RiemannSetup& setup, const GasModel& model,
                       const SweepOptions& options, const std::vector<double>& alphas,
                       const std::vector<double>& betas);

/// True for the isentropic law p = rho^2.
bool is_shallow_water_gas(const GasModel& model);

struct ColumnTransition {
  double alpha;
  std::optional<double> largest_conservative;
  std::optional<double> smallest_nonconservative;
  /// Midpoint of the bracket; empty when the column does not change verdict.
  std::optional<double> transition;
  bool above_grid = false;
  bool below_grid = false;
  bool monotone = true;
  double beta_necessary;
  double beta_criterion;
  std::optional<double> beta_sufficient;
  /// transition - curve; empty when the transition is.
  std::optional<double> gap_necessary;
  std::optional<double> gap_criterion;
  std::optional<double> gap_sufficient;
};

/// Per-column bracket of the conservative -> non-conservative change. For a
/// non-monotone column the bracket is taken at the first non-conservative
/// cell and the column is flagged.
std::vector<ColumnTransition> compare_transition(const RegionMap& map);

std::string format_transition_report(const std::vector<ColumnTransition>& report);

}  // namespace qgd
