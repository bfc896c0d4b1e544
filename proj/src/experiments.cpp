#include "qgd/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "qgd/spectral.hpp"

namespace qgd {

const char* to_string(Classification c) noexcept {
  switch (c) {
    case Classification::Conservative: return "conservative";
    case Classification::NonConservative: return "nonconservative";
    case Classification::Overflow: return "overflow";
  }
  return "unknown";
}

void RiemannSetup::validate() const {
  if (!(left.rho > 0.0) || !(right.rho > 0.0)) {
    throw Error(ErrorCode::NonPositiveDensity, "Riemann states need rho > 0");
  }
  if (!(x_min < x0 && x0 < x_max)) {
    throw Error(ErrorCode::DomainMismatch, "jump location must lie inside (x_min, x_max)");
  }
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "h must be > 0");
  if (!(t_end > 0.0)) throw Error(ErrorCode::InvalidArgument, "t_end must be > 0");
}

Mesh RiemannSetup::mesh() const {
  validate();
  const int n = static_cast<int>(std::lround((x_max - x_min) / h));
  Mesh m{n, h, x_min, Boundary::CopyOutflow};
  m.validate();
  return m;
}

double RiemannSetup::default_c_ref(const GasModel& model) const {
  return model.sound_speed(std::max(left.rho, right.rho));
}

RiemannSetup RiemannSetup::mirrored() const {
  RiemannSetup m = *this;
  m.left = {right.rho, -right.u};
  m.right = {left.rho, -left.u};
  m.x0 = -x0;
  m.x_min = -x_max;
  m.x_max = -x_min;
  return m;
}

MeshState riemann_initial(const RiemannSetup& setup, const Mesh& mesh) {
  setup.validate();
  mesh.validate();
  const double tol = 1e-9 * mesh.h;
  const double x_last = mesh.node(mesh.n - 1);
  if (mesh.x_min < setup.x_min - tol || x_last > setup.x_max + tol ||
      !(mesh.x_min < setup.x0 && setup.x0 < x_last)) {
    throw Error(ErrorCode::DomainMismatch, "mesh does not span the Riemann domain");
  }
  MeshState state;
  state.rho.resize(mesh.n);
  state.u.resize(mesh.n);
  for (int k = 0; k < mesh.n; ++k) {
    const bool left = mesh.node(k) <= setup.x0;
    const auto& s = left ? setup.left : setup.right;
    state.rho(k) = s.rho;
    state.u(k) = s.u;
  }
  return state;
}

RunVerdict classify_run(const Trajectory& traj, const ClassifierThresholds& thresholds) {
  if (traj.diagnostics.empty()) {
    throw Error(ErrorCode::EmptyTrajectory, "trajectory has no diagnostics");
  }
  RunVerdict verdict;
  const auto& initial = traj.diagnostics.front();
  const double tv0 = initial.tv_rho;
  double score = 0.0;
  bool left_corridor = false;
  const double floor = thresholds.corridor_low * initial.min_rho;
  const double ceil = thresholds.corridor_high * initial.max_rho;
  for (const auto& d : traj.diagnostics) {
    if (tv0 > 0.0) {
      score = std::max(score, d.tv_rho / tv0);
    } else if (d.tv_rho > 0.0) {
      score = std::numeric_limits<double>::infinity();
    }
    if (d.min_rho < floor || d.max_rho > ceil) left_corridor = true;
  }
  verdict.oscillation_score = score;
  if (traj.overflow) {
    verdict.classification = Classification::Overflow;
    verdict.completed = false;
    return verdict;
  }
  verdict.completed = true;
  verdict.classification = (score > thresholds.tv_ratio || left_corridor)
                               ? Classification::NonConservative
                               : Classification::Conservative;
  return verdict;
}

RunVerdict run_riemann_cell(const RiemannSetup& setup, const GasModel& model,
                            const SweepOptions& options, double alpha, double beta) {
  const Mesh mesh = setup.mesh();
  SchemeConfig cfg;
  cfg.alpha = alpha;
  cfg.alpha_s = options.alpha_s;
  cfg.regularization = options.variant;
  cfg.scheme = options.scheme;
  cfg.beta = beta;
  cfg.c_ref = options.c_ref > 0.0 ? options.c_ref : setup.default_c_ref(model);
  cfg.time_step_rule = options.time_step_rule;
  const auto initial = riemann_initial(setup, mesh);
  // Snapshots are not needed for classification; diagnostics cover every step.
  const int record_every = std::numeric_limits<int>::max();
  const auto traj = run_simulation(initial, mesh, model, cfg, setup.t_end, record_every);
  return classify_run(traj, options.thresholds);
}

bool is_shallow_water_gas(const GasModel& model) {
  const auto* law = std::get_if<Isentropic>(&model.law());
  return law != nullptr && law->p1 == 1.0 && law->gamma == 2.0;
}

RegionMap sweep_region(const RiemannSetup& setup, const GasModel& model,
                       const SweepOptions& options, const std::vector<double>& alphas,
                       const std::vector<double>& betas) {
  if (alphas.empty() || betas.empty()) {
    throw Error(ErrorCode::InvalidArgument, "sweep grids must be non-empty");
  }
  setup.validate();
  RegionMap map;
  map.alphas = alphas;
  map.betas = betas;
  map.kappa = options.variant == Regularization::FullQGD ? options.alpha_s + 1.0 : options.alpha_s;
  map.verdicts.resize(alphas.size() * betas.size());

  const bool with_sufficient = is_shallow_water_gas(model) && is_shallow_water_kappa(map.kappa);
  if (with_sufficient) map.overlays.sufficient.emplace();
  for (double alpha : alphas) {
    const LinearizedParams params{alpha, 1.0, map.kappa, options.variant};
    map.overlays.necessary.push_back(necessary_threshold(params));
    map.overlays.criterion.push_back(criterion_threshold(params));
    if (with_sufficient) map.overlays.sufficient->push_back(sufficient_threshold_sw(alpha));
  }

  const std::size_t cells = map.verdicts.size();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < cells; c = next++) {
      const std::size_t i = c / betas.size(), j = c % betas.size();
      RunVerdict v;
      try {
        v = run_riemann_cell(setup, model, options, alphas[i], betas[j]);
      } catch (const Error&) {
        v.classification = Classification::Overflow;
        v.completed = false;
      }
      map.verdicts[c] = v;
    }
  };
  const int workers = std::clamp<int>(options.workers, 1, static_cast<int>(cells));
  std::vector<std::jthread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  pool.clear();
  return map;
}

std::vector<ColumnTransition> compare_transition(const RegionMap& map) {
  std::vector<ColumnTransition> report;
  for (std::size_t i = 0; i < map.alphas.size(); ++i) {
    ColumnTransition col{};
    col.alpha = map.alphas[i];
    col.beta_necessary = map.overlays.necessary[i];
    col.beta_criterion = map.overlays.criterion[i];
    if (map.overlays.sufficient) col.beta_sufficient = (*map.overlays.sufficient)[i];

    std::optional<std::size_t> first_bad;
    for (std::size_t j = 0; j < map.betas.size(); ++j) {
      const bool good = map.at(i, j).classification == Classification::Conservative;
      if (good) {
        col.largest_conservative = map.betas[j];
        if (first_bad) col.monotone = false;
      } else if (!first_bad) {
        first_bad = j;
        col.smallest_nonconservative = map.betas[j];
      }
    }
    if (!first_bad) {
      col.above_grid = true;
    } else if (*first_bad == 0) {
      col.below_grid = true;
    } else {
      col.transition = 0.5 * (map.betas[*first_bad - 1] + map.betas[*first_bad]);
      col.gap_necessary = *col.transition - col.beta_necessary;
      col.gap_criterion = *col.transition - col.beta_criterion;
      if (col.beta_sufficient) col.gap_sufficient = *col.transition - *col.beta_sufficient;
    }
    report.push_back(col);
  }
  return report;
}

std::string format_transition_report(const std::vector<ColumnTransition>& report) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%7s %12s %10s %10s %10s %10s %10s\n", "alpha", "transition",
                "necessary", "criterion", "sufficient", "gap_crit", "gap_nec");
  os << line;
  for (const auto& c : report) {
    char transition[32];
    if (c.above_grid) {
      std::snprintf(transition, sizeof transition, "> %.4g", c.largest_conservative.value_or(0.0));
    } else if (c.below_grid) {
      std::snprintf(transition, sizeof transition, "< %.4g",
                    c.smallest_nonconservative.value_or(0.0));
    } else {
      std::snprintf(transition, sizeof transition, "%.4f%s", *c.transition,
                    c.monotone ? "" : "*");
    }
    auto fmt = [](const std::optional<double>& v) {
      char buf[32];
      if (v) {
        std::snprintf(buf, sizeof buf, "%.4f", *v);
      } else {
        std::snprintf(buf, sizeof buf, "-");
      }
      return std::string(buf);
    };
    std::snprintf(line, sizeof line, "%7.3f %12s %10.4f %10.4f %10s %10s %10s\n", c.alpha,
                  transition, c.beta_necessary, c.beta_criterion, fmt(c.beta_sufficient).c_str(),
                  fmt(c.gap_criterion).c_str(), fmt(c.gap_necessary).c_str());
    os << line;
  }
  os << "(* non-monotone column)\n";
  return os.str();
}

}  // namespace qgd
