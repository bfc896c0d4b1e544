#pragma once

#include <vector>

#include "qgd/core.hpp"

namespace qgd {

/// Regularized fluxes on the half-node mesh (N + 1 entries each).
struct HalfMeshFluxes {
  Array j;         ///< mass flux
  Array w;         ///< regularizing velocity
  Array w_hat;     ///< regularizing velocity, hat variant
  Array pi;        ///< regularized stress
  Array pi_ns;     ///< viscous part mu * delta u
};

/// Standard discretization: pressure enters through delta p(rho) and p(s rho).
HalfMeshFluxes fluxes_standard(const MeshState& state, const Mesh& mesh, const GasModel& model,
                               const SchemeConfig& cfg);

/// Enthalpy discretization: pressure enters through delta h(rho).
HalfMeshFluxes fluxes_enthalpy(const MeshState& state, const Mesh& mesh, const GasModel& model,
                               const SchemeConfig& cfg);

/// One explicit step of the standard scheme. Throws NonPositiveDensity if
/// the updated density is not strictly positive and finite.
MeshState step_standard(const MeshState& state, const Mesh& mesh, const GasModel& model,
                        const SchemeConfig& cfg);

/// One explicit step of the enthalpy scheme.
MeshState step_enthalpy(const MeshState& state, const Mesh& mesh, const GasModel& model,
                        const SchemeConfig& cfg);

/// Dispatches on cfg.scheme.
MeshState step(const MeshState& state, const Mesh& mesh, const GasModel& model,
               const SchemeConfig& cfg);

struct Diagnostics {
  double t;
  double mass;
  double momentum;
  double min_rho;
  double max_rho;
  double max_abs_u;
  double tv_rho;
};

Diagnostics diagnose(const MeshState& state, const Mesh& mesh);

struct Snapshot {
  double t;
  MeshState state;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  std::vector<Diagnostics> diagnostics;
  int steps = 0;
  bool overflow = false;

  const MeshState& final_state() const { return snapshots.back().state; }
};

/// Advances until t >= t_end. Diagnostics are recorded every step and
/// snapshots every `record_every` steps (plus the initial and last state).
/// A non-finite value or a non-positive density ends the run with
/// `overflow` set; the last valid state is kept as the final snapshot.
Trajectory run_simulation(const MeshState& initial, const Mesh& mesh, const GasModel& model,
                          const SchemeConfig& cfg, double t_end, int record_every);

}  // namespace qgd
