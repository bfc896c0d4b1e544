#include "qgd/schemes.hpp"

#include <cmath>
#include <string>

#include "qgd/grid.hpp"

namespace qgd {

namespace {

void require_shape(const MeshState& state, const Mesh& mesh) {
  state.validate();
  if (state.size() != mesh.n) {
    throw Error(ErrorCode::LengthMismatch, "state length " + std::to_string(state.size()) +
                                               " does not match mesh size " +
                                               std::to_string(mesh.n));
  }
}

// Node-wise tau and mu from the QGD formulas.
struct NodeCoefficients {
  Array tau;
  Array mu;
};

NodeCoefficients node_coefficients(const Array& rho, const Array& dp, const SchemeConfig& cfg,
                                   double h) {
  NodeCoefficients c;
  c.tau = cfg.alpha * h / dp.sqrt();
  c.mu = cfg.alpha_s * c.tau * rho * dp;
  return c;
}

MeshState advance(const MeshState& state, const Mesh& mesh, const SchemeConfig& cfg,
                  const Array& mass_flux_divergence, const Array& momentum_rate) {
  const double dt = cfg.time_step(mesh.h);
  MeshState next;
  next.rho = state.rho - dt * mass_flux_divergence;
  const Array momentum = state.rho * state.u - dt * momentum_rate;
  for (Eigen::Index k = 0; k < next.rho.size(); ++k) {
    if (!(next.rho(k) > 0.0) || !std::isfinite(next.rho(k)) || !std::isfinite(momentum(k))) {
      throw Error(ErrorCode::NonPositiveDensity,
                  "step rejected at node " + std::to_string(k) + ", t = " +
                      std::to_string(state.t + dt) + ", rho = " + std::to_string(next.rho(k)));
    }
  }
  next.u = momentum / next.rho;
  next.t = state.t + dt;
  return next;
}

}  // namespace

HalfMeshFluxes fluxes_standard(const MeshState& state, const Mesh& mesh, const GasModel& model,
                               const SchemeConfig& cfg) {
  require_shape(state, mesh);
  const Array& rho = state.rho;
  const Array& u = state.u;
  const Array dp = model.pressure_derivative(rho);
  const auto coeff = node_coefficients(rho, dp, cfg, mesh.h);

  const Array s_rho = half_average(rho, mesh);
  const Array s_u = half_average(u, mesh);
  const Array s_tau = half_average(coeff.tau, mesh);
  const Array s_mu = half_average(coeff.mu, mesh);
  const Array d_u = half_difference(u, mesh);
  const Array d_m = half_difference(Array(rho * u), mesh);
  const Array d_p = half_difference(model.pressure(rho), mesh);
  const Array dp_avg = model.pressure_derivative(s_rho);

  HalfMeshFluxes f;
  const Array rho_w_hat = s_tau * (s_rho * s_u * d_u + d_p);
  Array rho_w = rho_w_hat;
  f.pi_ns = s_mu * d_u;
  f.pi = f.pi_ns + s_u * rho_w_hat;
  if (cfg.regularization == Regularization::FullQGD) {
    rho_w += s_tau * d_m * s_u;
    f.pi += s_tau * dp_avg * d_m;
  }
  f.w_hat = rho_w_hat / s_rho;
  f.w = rho_w / s_rho;
  f.j = s_rho * s_u - rho_w;
  return f;
}

HalfMeshFluxes fluxes_enthalpy(const MeshState& state, const Mesh& mesh, const GasModel& model,
                               const SchemeConfig& cfg) {
  require_shape(state, mesh);
  const Array& rho = state.rho;
  const Array& u = state.u;
  const Array dp = model.pressure_derivative(rho);
  const auto coeff = node_coefficients(rho, dp, cfg, mesh.h);

  const Array s_rho = half_average(rho, mesh);
  const Array s_u = half_average(u, mesh);
  const Array s_tau = half_average(coeff.tau, mesh);
  const Array s_mu = half_average(coeff.mu, mesh);
  const Array d_u = half_difference(u, mesh);
  const Array d_h = half_difference(model.enthalpy(rho), mesh);
  const Array dp_avg = model.pressure_derivative(s_rho);

  HalfMeshFluxes f;
  f.w_hat = s_tau * (s_u * d_u + d_h);
  Array rho_w = s_rho * f.w_hat;
  f.pi_ns = s_mu * d_u;
  f.pi = f.pi_ns + s_u * s_rho * f.w_hat;
  if (cfg.regularization == Regularization::FullQGD) {
    // (tau d/dx)_h (rho u) expressed through delta h and delta u
    const Array tau_over_dh = half_average(Array(coeff.tau / model.enthalpy_derivative(rho)), mesh);
    const Array tau_dm = tau_over_dh * (d_h * s_u + dp_avg * d_u);
    rho_w += tau_dm * s_u;
    f.pi += dp_avg * tau_dm;
  }
  f.w = rho_w / s_rho;
  f.j = s_rho * s_u - rho_w;
  return f;
}

MeshState step_standard(const MeshState& state, const Mesh& mesh, const GasModel& model,
                        const SchemeConfig& cfg) {
  const auto f = fluxes_standard(state, mesh, model, cfg);
  const Array s_rho = half_average(state.rho, mesh);
  const Array s_u = half_average(state.u, mesh);
  const Array momentum_flux = f.j * s_u + model.pressure(s_rho) - f.pi;
  return advance(state, mesh, cfg, node_difference(f.j, mesh), node_difference(momentum_flux, mesh));
}

MeshState step_enthalpy(const MeshState& state, const Mesh& mesh, const GasModel& model,
                        const SchemeConfig& cfg) {
  const auto f = fluxes_enthalpy(state, mesh, model, cfg);
  const Array s_rho = half_average(state.rho, mesh);
  const Array s_u = half_average(state.u, mesh);
  const Array d_h = half_difference(model.enthalpy(state.rho), mesh);
  const Array momentum_flux = f.j * s_u - f.pi;
  const Array rate = node_difference(momentum_flux, mesh) + node_average(Array(s_rho * d_h), mesh);
  return advance(state, mesh, cfg, node_difference(f.j, mesh), rate);
}

MeshState step(const MeshState& state, const Mesh& mesh, const GasModel& model,
               const SchemeConfig& cfg) {
  return cfg.scheme == SchemeKind::Standard ? step_standard(state, mesh, model, cfg)
                                            : step_enthalpy(state, mesh, model, cfg);
}

Diagnostics diagnose(const MeshState& state, const Mesh& mesh) {
  const Eigen::Index n = state.size();
  return Diagnostics{
      state.t,
      state.rho.sum() * mesh.h,
      (state.rho * state.u).sum() * mesh.h,
      state.rho.minCoeff(),
      state.rho.maxCoeff(),
      state.u.abs().maxCoeff(),
      (state.rho.tail(n - 1) - state.rho.head(n - 1)).abs().sum(),
  };
}

Trajectory run_simulation(const MeshState& initial, const Mesh& mesh, const GasModel& model,
                          const SchemeConfig& cfg, double t_end, int record_every) {
  if (!(t_end > 0.0)) throw Error(ErrorCode::InvalidArgument, "t_end must be > 0");
  if (record_every < 1) throw Error(ErrorCode::InvalidArgument, "record_every must be >= 1");
  mesh.validate();
  cfg.validate();
  require_shape(initial, mesh);

  Trajectory traj;
  traj.snapshots.push_back({initial.t, initial});
  traj.diagnostics.push_back(diagnose(initial, mesh));

  // Guard against accumulating dt landing a hair below t_end.
  const double t_stop = t_end - 1e-9 * mesh.h;
  SchemeConfig step_cfg = cfg;
  MeshState current = initial;
  while (current.t < t_stop) {
    MeshState next;
    try {
      if (cfg.time_step_rule == TimeStepRule::SignalSpeed) {
        step_cfg.c_ref = (current.u.abs() + model.pressure_derivative(current.rho).sqrt()).maxCoeff();
      }
      next = step(current, mesh, model, step_cfg);
    } catch (const Error&) {
      traj.overflow = true;
      break;
    }
    const auto d = diagnose(next, mesh);
    if (!std::isfinite(d.mass) || !std::isfinite(d.momentum) || !std::isfinite(d.max_abs_u)) {
      traj.overflow = true;
      break;
    }
    current = std::move(next);
    ++traj.steps;
    traj.diagnostics.push_back(d);
    if (traj.steps % record_every == 0) traj.snapshots.push_back({current.t, current});
  }
  if (traj.snapshots.back().t < current.t) traj.snapshots.push_back({current.t, current});
  return traj;
}

}  // namespace qgd
