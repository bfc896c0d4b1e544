#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qgd/schemes.hpp"
#include "qgd/spectral.hpp"

using namespace qgd;

namespace {

// Straightforward index-loop implementation of both schemes on a periodic
// mesh, used as a reference for the vectorized code.
struct Reference {
  const GasModel& gas;
  SchemeConfig cfg;
  double h;

  double p(double r) const { return gas.pressure(r).p; }
  double dp(double r) const { return gas.pressure(r).dp; }
  double en(double r) const { return gas.enthalpy(r).h; }
  double den(double r) const { return gas.enthalpy(r).dh; }
  double tau(double r) const { return cfg.alpha * h / std::sqrt(dp(r)); }
  double mu(double r) const { return cfg.alpha_s * tau(r) * r * dp(r); }
  bool full() const { return cfg.regularization == Regularization::FullQGD; }

  // Mass flux j, momentum flux and the node source at half-node between a and b.
  struct Half {
    double j, flux, w, w_hat, pi;
    double s_rho_dh;
  };

  Half half(double ra, double ua, double rb, double ub, bool enthalpy) const {
    const double sr = 0.5 * (ra + rb), su = 0.5 * (ua + ub);
    const double stau = 0.5 * (tau(ra) + tau(rb)), smu = 0.5 * (mu(ra) + mu(rb));
    const double du = (ub - ua) / h, dm = (rb * ub - ra * ua) / h;
    const double dpa = dp(sr);
    Half out{};
    if (!enthalpy) {
      const double dpr = (p(rb) - p(ra)) / h;
      const double rw_hat = stau * (sr * su * du + dpr);
      double rw = rw_hat;
      double pi = smu * du + su * rw_hat;
      if (full()) {
        rw += stau * dm * su;
        pi += stau * dpa * dm;
      }
      out.j = sr * su - rw;
      out.w_hat = rw_hat / sr;
      out.w = rw / sr;
      out.pi = pi;
      out.flux = out.j * su + p(sr) - pi;
    } else {
      const double dh = (en(rb) - en(ra)) / h;
      const double w_hat = stau * (su * du + dh);
      double rw = sr * w_hat;
      double pi = smu * du + su * sr * w_hat;
      if (full()) {
        const double s_tau_dh = 0.5 * (tau(ra) / den(ra) + tau(rb) / den(rb));
        const double tau_dm = s_tau_dh * (dh * su + dpa * du);
        rw += tau_dm * su;
        pi += dpa * tau_dm;
      }
      out.j = sr * su - rw;
      out.w_hat = w_hat;
      out.w = rw / sr;
      out.pi = pi;
      out.flux = out.j * su - pi;
      out.s_rho_dh = sr * dh;
    }
    return out;
  }

  MeshState step(const MeshState& s, bool enthalpy) const {
    const int n = static_cast<int>(s.size());
    std::vector<Half> halves(n + 1);
    for (int i = 0; i <= n; ++i) {
      const int a = (i - 1 + n) % n, b = i % n;
      halves[i] = half(s.rho(a), s.u(a), s.rho(b), s.u(b), enthalpy);
    }
    const double dt = cfg.beta * h / cfg.c_ref;
    MeshState out{Array(n), Array(n), s.t + dt};
    for (int k = 0; k < n; ++k) {
      const auto& lo = halves[k];
      const auto& hi = halves[k + 1];
      const double rho = s.rho(k) - dt * (hi.j - lo.j) / h;
      double rate = (hi.flux - lo.flux) / h;
      if (enthalpy) rate += 0.5 * (lo.s_rho_dh + hi.s_rho_dh);
      out.rho(k) = rho;
      out.u(k) = (s.rho(k) * s.u(k) - dt * rate) / rho;
    }
    return out;
  }
};

MeshState random_state(int n, std::uint64_t seed, double amplitude = 0.3) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  MeshState s{Array(n), Array(n), 0.0};
  for (int k = 0; k < n; ++k) {
    s.rho(k) = 1.0 + amplitude * d(rng);
    s.u(k) = amplitude * d(rng);
  }
  return s;
}

SchemeConfig make_config(SchemeKind kind, Regularization variant) {
  SchemeConfig cfg;
  cfg.alpha = 0.4;
  cfg.alpha_s = 4.0 / 3.0;
  cfg.scheme = kind;
  cfg.regularization = variant;
  cfg.beta = 0.3;
  cfg.c_ref = std::sqrt(2.0);
  return cfg;
}

const SchemeKind kKinds[] = {SchemeKind::Standard, SchemeKind::Enthalpy};
const Regularization kVariants[] = {Regularization::FullQGD, Regularization::SimplifiedQHD};

double max_abs(const Array& a) { return a.abs().maxCoeff(); }

}  // namespace

TEST_CASE("vectorized fluxes and steps match the index-loop reference") {
  const Mesh mesh{33, 0.03, 0.0, Boundary::Periodic};
  for (const auto& gas : {GasModel::isentropic(1.0, 2.0), GasModel::isentropic(0.8, 1.4)}) {
    for (auto kind : kKinds) {
      for (auto variant : kVariants) {
        const auto cfg = make_config(kind, variant);
        const Reference ref{gas, cfg, mesh.h};
        const bool enthalpy = kind == SchemeKind::Enthalpy;
        const auto s = random_state(mesh.n, 11);
        const auto f = enthalpy ? fluxes_enthalpy(s, mesh, gas, cfg) : fluxes_standard(s, mesh, gas, cfg);
        REQUIRE(f.j.size() == mesh.n + 1);
        for (int i = 0; i <= mesh.n; ++i) {
          const int a = (i - 1 + mesh.n) % mesh.n, b = i % mesh.n;
          const auto r = ref.half(s.rho(a), s.u(a), s.rho(b), s.u(b), enthalpy);
          CHECK(std::abs(f.j(i) - r.j) < 1e-13);
          CHECK(std::abs(f.w(i) - r.w) < 1e-13);
          CHECK(std::abs(f.w_hat(i) - r.w_hat) < 1e-13);
          CHECK(std::abs(f.pi(i) - r.pi) < 1e-13);
        }
        const auto next = step(s, mesh, gas, cfg);
        const auto expected = ref.step(s, enthalpy);
        CHECK(max_abs(next.rho - expected.rho) < 1e-13);
        CHECK(max_abs(next.u - expected.u) < 1e-13);
        CHECK(next.t == doctest::Approx(expected.t));
      }
    }
  }
}

TEST_CASE("constant states give trivial fluxes and are fixed points") {
  const auto gas = GasModel::isentropic(1.0, 2.0);
  for (auto boundary : {Boundary::Periodic, Boundary::CopyOutflow}) {
    const Mesh mesh{20, 0.05, -0.5, boundary};
    for (double u_star : {0.0, 0.7}) {
      const MeshState s{Array::Constant(20, 0.6), Array::Constant(20, u_star), 0.0};
      for (auto kind : kKinds) {
        for (auto variant : kVariants) {
          const auto cfg = make_config(kind, variant);
          const auto f = kind == SchemeKind::Standard ? fluxes_standard(s, mesh, gas, cfg)
                                                      : fluxes_enthalpy(s, mesh, gas, cfg);
          CHECK(max_abs(f.w) == 0.0);
          CHECK(max_abs(f.w_hat) == 0.0);
          CHECK(max_abs(f.pi) == 0.0);
          CHECK(max_abs(f.j - 0.6 * u_star) < 1e-15);
          const auto next = step(s, mesh, gas, cfg);
          CHECK(max_abs(next.rho - s.rho) < 1e-15);
          CHECK(max_abs(next.u - s.u) < 1e-15);
        }
      }
    }
  }
}

TEST_CASE("three-node perturbation: mass flux is s(rho) s(u) to second order") {
  const auto gas = GasModel::isentropic(1.0, 2.0);
  const Mesh mesh{3, 0.1, 0.0, Boundary::Periodic};
  for (auto variant : kVariants) {
    const auto cfg = make_config(SchemeKind::Standard, variant);
    double previous = 0.0;
    for (double eps : {1e-3, 1e-4, 1e-5}) {
      const MeshState s{Array::Ones(3), Array{{0.0, eps, 0.0}}, 0.0};
      const auto f = fluxes_standard(s, mesh, gas, cfg);
      // Half-nodes 1 and 2 straddle the perturbed node.
      CHECK(f.j(1) == doctest::Approx(eps / 2).epsilon(1e-2));
      CHECK(f.j(2) == doctest::Approx(eps / 2).epsilon(1e-2));
      const Array su = Array{{0.0, eps / 2, eps / 2, 0.0}};
      const double residual = max_abs(f.j - su);
      CHECK(residual < 10 * eps * eps);
      if (previous > 0.0) CHECK(previous / residual == doctest::Approx(100.0).epsilon(0.05));
      previous = residual;
    }
  }
}

TEST_CASE("periodic steps conserve mass; the standard scheme also conserves momentum") {
  const auto gas = GasModel::isentropic(1.0, 2.0);
  const Mesh mesh{50, 0.02, 0.0, Boundary::Periodic};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto s = random_state(mesh.n, seed);
    for (auto kind : kKinds) {
      for (auto variant : kVariants) {
        const auto next = step(s, mesh, gas, make_config(kind, variant));
        CHECK(std::abs(next.rho.sum() - s.rho.sum()) < 1e-12);
        if (kind == SchemeKind::Standard) {
          CHECK(std::abs(next.momentum().sum() - s.momentum().sum()) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("QGD and QHD coincide for a fluid at rest") {
  const auto gas = GasModel::isentropic(1.0, 2.0);
  const Mesh mesh{40, 0.025, 0.0, Boundary::Periodic};
  auto s = random_state(mesh.n, 3);
  s.u.setZero();
  for (auto kind : kKinds) {
    const auto fluxes = kind == SchemeKind::Standard ? fluxes_standard : fluxes_enthalpy;
    const auto a = fluxes(s, mesh, gas, make_config(kind, Regularization::FullQGD));
    const auto b = fluxes(s, mesh, gas, make_config(kind, Regularization::SimplifiedQHD));
    CHECK(max_abs(a.j - b.j) < 1e-15);
    CHECK(max_abs(a.pi - b.pi) < 1e-15);
  }
}

TEST_CASE("enthalpy and standard schemes differ at second order in the perturbation") {
  const auto gas = GasModel::isentropic(1.0, 2.0);
  const Mesh mesh{32, 1.0 / 32, 0.0, Boundary::Periodic};
  const auto base = random_state(mesh.n, 9, 1.0);
  for (auto variant : kVariants) {
    std::vector<double> diffs;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      const MeshState s{1.0 + eps * (base.rho - 1.0), eps * base.u, 0.0};
      const auto a = step(s, mesh, gas, make_config(SchemeKind::Standard, variant));
      const auto b = step(s, mesh, gas, make_config(SchemeKind::Enthalpy, variant));
      diffs.push_back(std::max(max_abs(a.rho - b.rho), max_abs(a.u - b.u)));
    }
    for (std::size_t i = 1; i < diffs.size(); ++i) {
      CHECK(diffs[i - 1] / diffs[i] == doctest::Approx(100.0).epsilon(0.2));
    }
  }
}

TEST_CASE("nonlinear step approaches the linearized scheme linearly in the amplitude") {
  const auto gas = GasModel::isentropic(1.0, 2.0);
  const Mesh mesh{48, 1.0 / 48, 0.0, Boundary::Periodic};
  const auto base = random_state(mesh.n, 21, 1.0);
  const Array r = base.rho - 1.0, v = base.u;
  const double rho_star = 1.0, c = gas.sound_speed(rho_star);
  for (auto kind : kKinds) {
    for (auto variant : kVariants) {
      auto cfg = make_config(kind, variant);
      cfg.c_ref = c;
      const auto [rl, ul] = linearized_step(r, v, LinearizedParams::from_scheme(cfg));
      std::vector<double> mismatch;
      for (double eps : {1e-4, 1e-5, 1e-6}) {
        const MeshState s{rho_star * (1.0 + eps * r), c * eps * v, 0.0};
        const auto next = step(s, mesh, gas, cfg);
        mismatch.push_back(std::max(max_abs((next.rho / rho_star - 1.0) / eps - rl),
                                    max_abs(next.u / (c * eps) - ul)));
      }
      CHECK(mismatch[0] < 1e-2);
      CHECK(mismatch[0] / mismatch[1] == doctest::Approx(10.0).epsilon(0.3));
      CHECK(mismatch[1] / mismatch[2] == doctest::Approx(10.0).epsilon(0.3));
    }
  }
}

TEST_CASE("run_simulation records consistent trajectories") {
  const auto gas = GasModel::isentropic(1.0, 2.0);
  const Mesh mesh{40, 0.025, 0.0, Boundary::Periodic};
  auto cfg = make_config(SchemeKind::Enthalpy, Regularization::FullQGD);

  SUBCASE("constant state is preserved") {
    const MeshState s{Array::Constant(40, 0.9), Array::Constant(40, -0.2), 0.0};
    const auto traj = run_simulation(s, mesh, gas, cfg, 0.3, 7);
    CHECK_FALSE(traj.overflow);
    CHECK(max_abs(traj.final_state().rho - s.rho) < 1e-14);
    CHECK(max_abs(traj.final_state().u - s.u) < 1e-14);
  }

  SUBCASE("time and bookkeeping") {
    const auto s = random_state(mesh.n, 4, 0.1);
    const auto traj = run_simulation(s, mesh, gas, cfg, 0.2, 5);
    CHECK_FALSE(traj.overflow);
    CHECK(traj.diagnostics.size() == std::size_t(traj.steps + 1));
    CHECK(traj.final_state().t >= 0.2 - 1e-9);
    CHECK(traj.final_state().t < 0.2 + cfg.time_step(mesh.h));
    for (std::size_t i = 1; i < traj.snapshots.size(); ++i) {
      CHECK(traj.snapshots[i].t > traj.snapshots[i - 1].t);
    }
    for (const auto& d : traj.diagnostics) {
      CHECK(d.mass == doctest::Approx(traj.diagnostics.front().mass).epsilon(1e-13));
      CHECK(d.min_rho > 0.0);
    }
  }

  SUBCASE("signal-speed time steps stay finite and conservative") {
    cfg.time_step_rule = TimeStepRule::SignalSpeed;
    const auto s = random_state(mesh.n, 5, 0.2);
    const auto traj = run_simulation(s, mesh, gas, cfg, 0.2, 1000);
    CHECK_FALSE(traj.overflow);
    CHECK(traj.snapshots.size() == 2);
    CHECK(traj.diagnostics.back().mass == doctest::Approx(traj.diagnostics.front().mass));
  }

  SUBCASE("an unstable run ends with the overflow flag and a valid last state") {
    cfg.beta = 3.0;
    const auto s = random_state(mesh.n, 6, 0.3);
    const auto traj = run_simulation(s, mesh, gas, cfg, 50.0, 10);
    CHECK(traj.overflow);
    CHECK(traj.diagnostics.size() == std::size_t(traj.steps + 1));
    CHECK((traj.final_state().rho > 0.0).all());
    CHECK(traj.final_state().rho.allFinite());
    CHECK(traj.final_state().t < 50.0);
  }

  SUBCASE("invalid arguments") {
    const auto s = random_state(mesh.n, 4);
    CHECK_THROWS_AS(run_simulation(s, mesh, gas, cfg, 0.0, 1), Error);
    CHECK_THROWS_AS(run_simulation(s, mesh, gas, cfg, 1.0, 0), Error);
    const auto short_state = random_state(mesh.n - 1, 4);
    CHECK_THROWS_AS(run_simulation(short_state, mesh, gas, cfg, 1.0, 1), Error);
  }
}

TEST_CASE("a step that drives density negative is rejected") {
  const auto gas = GasModel::isentropic(1.0, 2.0);
  const Mesh mesh{10, 0.1, 0.0, Boundary::Periodic};
  auto cfg = make_config(SchemeKind::Standard, Regularization::FullQGD);
  cfg.beta = 50.0;
  MeshState s{Array::Ones(10), Array::Zero(10), 0.0};
  s.rho(5) = 0.01;
  s.u(4) = -2.0;
  s.u(6) = 2.0;
  try {
    step(s, mesh, gas, cfg);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveDensity);
  }
}
