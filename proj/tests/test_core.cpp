#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qgd/core.hpp"
#include "qgd/grid.hpp"

using namespace qgd;
using doctest::Approx;

namespace {

Array random_array(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Array a(n);
  for (auto& x : a) x = dist(rng);
  return a;
}

}  // namespace

TEST_CASE("isentropic pressure") {
  const auto gas = GasModel::isentropic(1.0, 2.0);
  auto [p, dp] = gas.pressure(1.0);
  CHECK(p == 1.0);
  CHECK(dp == 2.0);
  p = gas.pressure(0.1).p;
  dp = gas.pressure(0.1).dp;
  CHECK(p == Approx(0.01).epsilon(1e-15));
  CHECK(dp == Approx(0.2).epsilon(1e-15));

  const auto air = GasModel::isentropic(1.0, 1.4);
  p = air.pressure(2.0).p;
  dp = air.pressure(2.0).dp;
  CHECK(p == Approx(2.6390158215457884).epsilon(1e-14));
  CHECK(dp == Approx(1.8473110750820518).epsilon(1e-14));
}

TEST_CASE("pressure errors") {
  const auto gas = GasModel::isentropic(1.0, 2.0);
  CHECK_THROWS_AS(gas.pressure(0.0), Error);
  CHECK_THROWS_AS(gas.pressure(-1.0), Error);
  try {
    gas.enthalpy(-0.5);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveDensity);
  }

  // p' vanishes at rho = 1.
  const auto bad = GasModel::tabulated([](double r) { return (r - 1) * (r - 1) * (r - 1); },
                                       [](double r) { return 3 * (r - 1) * (r - 1); }, 0.5);
  try {
    bad.pressure(1.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonMonotonePressure);
  }
  CHECK_THROWS_AS(GasModel::isentropic(1.0, 1.0), Error);
}

TEST_CASE("isentropic enthalpy") {
  const auto gas = GasModel::isentropic(1.0, 2.0);
  auto [h, dh] = gas.enthalpy(1.0);
  CHECK(h == 2.0);
  CHECK(dh == 2.0);
  h = gas.enthalpy(0.25).h;
  dh = gas.enthalpy(0.25).dh;
  CHECK(h == Approx(0.5).epsilon(1e-15));
  CHECK(dh == Approx(2.0).epsilon(1e-15));

  const auto air = GasModel::isentropic(1.0, 1.4);
  h = air.enthalpy(1.0).h;
  dh = air.enthalpy(1.0).dh;
  CHECK(h == Approx(3.5).epsilon(1e-14));
  CHECK(dh == Approx(1.4).epsilon(1e-14));
}

TEST_CASE("enthalpy identities hold over a density range") {
  for (double gamma : {1.4, 2.0, 3.0}) {
    const auto gas = GasModel::isentropic(0.7, gamma);
    for (double rho = 0.05; rho < 5.0; rho *= 1.3) {
      const auto [p, dp] = gas.pressure(rho);
      const auto [h, dh] = gas.enthalpy(rho);
      CHECK(h == Approx(gamma / (gamma - 1) * p / rho).epsilon(1e-14));
      CHECK(dh == Approx(gamma * p / (rho * rho)).epsilon(1e-14));
      CHECK(dh == Approx(dp / rho).epsilon(1e-14));
    }
  }
}

TEST_CASE("quadrature enthalpy matches the closed form up to a constant") {
  const double gamma = 1.4;
  const auto closed = GasModel::isentropic(1.0, gamma);
  for (double r0 : {0.3, 1.0, 2.5}) {
    const auto quad = GasModel::tabulated([=](double r) { return std::pow(r, gamma); },
                                          [=](double r) { return gamma * std::pow(r, gamma - 1); }, r0);
    for (auto [a, b] : {std::pair{0.2, 0.9}, std::pair{0.5, 3.0}, std::pair{1.7, 1.71}}) {
      const double diff_quad = quad.enthalpy(b).h - quad.enthalpy(a).h;
      const double diff_closed = closed.enthalpy(b).h - closed.enthalpy(a).h;
      CHECK(std::abs(diff_quad - diff_closed) < 1e-8);
    }
    CHECK(std::abs(quad.enthalpy(r0).h) < 1e-14);
    CHECK(quad.enthalpy(0.8).dh == Approx(closed.enthalpy(0.8).dh).epsilon(1e-14));
  }
}

TEST_CASE("regularization parameters") {
  const auto gas = GasModel::isentropic(1.0, 2.0);
  SchemeConfig cfg;
  cfg.alpha = 0.5;
  cfg.alpha_s = 0.0;
  auto [tau, mu] = regularization_params(gas, cfg, 1.0, 0.01);
  CHECK(tau == Approx(0.0035355339059327372).epsilon(1e-14));
  CHECK(mu == 0.0);

  cfg.alpha = 0.4;
  cfg.alpha_s = 4.0 / 3.0;
  tau = regularization_params(gas, cfg, 1.0, 1.0 / 125.0).tau;
  mu = regularization_params(gas, cfg, 1.0, 1.0 / 125.0).mu;
  CHECK(tau == Approx(0.002262741699796952).epsilon(1e-14));
  CHECK(mu == Approx(0.006033977866125206).epsilon(1e-14));
  CHECK(cfg.kappa() == Approx(7.0 / 3.0).epsilon(1e-15));

  const auto [tau1, mu1] = regularization_params(gas, cfg, 0.37, 0.01);
  cfg.alpha *= 2.0;
  const auto [tau2, mu2] = regularization_params(gas, cfg, 0.37, 0.01);
  CHECK(tau2 == Approx(2.0 * tau1).epsilon(1e-15));
  CHECK(mu2 == Approx(2.0 * mu1).epsilon(1e-15));

  CHECK_THROWS_AS(regularization_params(gas, cfg, 0.0, 0.01), Error);
}

TEST_CASE("kappa depends on the regularization variant") {
  SchemeConfig cfg;
  cfg.alpha_s = 0.5;
  cfg.regularization = Regularization::FullQGD;
  CHECK(cfg.kappa() == 1.5);
  cfg.regularization = Regularization::SimplifiedQHD;
  CHECK(cfg.kappa() == 0.5);
  cfg.beta = 0.5;
  cfg.c_ref = 2.0;
  CHECK(cfg.time_step(0.1) == Approx(0.025));
}

TEST_CASE("grid operators on constants and linear data") {
  const Mesh periodic{16, 0.1, 0.0, Boundary::Periodic};
  const Array c = Array::Constant(16, 3.25);
  CHECK((half_average(c, periodic) == 3.25).all());
  CHECK((half_difference(c, periodic) == 0.0).all());
  CHECK((node_difference(Array(Array::Constant(17, -1.5)), periodic) == 0.0).all());

  const Mesh open{16, 0.1, -0.8, Boundary::CopyOutflow};
  const Array x = open.nodes();
  const Array dx = half_difference(x, open);
  const Array sx = half_average(x, open);
  // Interior half-nodes 1..N-1 see no ghost values.
  for (int i = 1; i < 16; ++i) {
    CHECK(dx(i) == Approx(1.0).epsilon(1e-13));
    CHECK(sx(i) == Approx(-0.8 + (i - 0.5) * 0.1).epsilon(1e-13));
  }
  // Copy-outflow ghosts give zero gradients at both ends.
  CHECK(dx(0) == 0.0);
  CHECK(dx(16) == 0.0);
}

TEST_CASE("second difference as a composition") {
  const Mesh mesh{40, 0.05, 0.0, Boundary::Periodic};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Array v = random_array(40, seed);
    const Array composed = node_difference(half_difference(v, mesh), mesh);
    const Array vp = shifted(v, mesh, +1), vm = shifted(v, mesh, -1);
    const Array direct = (vp - 2.0 * v + vm) / (mesh.h * mesh.h);
    const double scale = direct.abs().maxCoeff();
    CHECK((composed - direct).abs().maxCoeff() <= 1e-13 * scale);
  }
}

TEST_CASE("periodic averaging and differencing commute with shifts") {
  const Mesh mesh{24, 0.2, 0.0, Boundary::Periodic};
  const Array v = random_array(24, 42);
  const Array shifted_first = half_difference(shifted(v, mesh, +1), mesh);
  const Array diff_first = half_difference(v, mesh);
  const Array avg_shift = half_average(shifted(v, mesh, +1), mesh);
  const Array avg = half_average(v, mesh);
  // Half-node i of the shifted array equals half-node i + 1 of the original.
  for (int i = 0; i < 24; ++i) {
    CHECK(shifted_first(i) == doctest::Approx(diff_first(i + 1)).epsilon(1e-15));
    CHECK(avg_shift(i) == doctest::Approx(avg(i + 1)).epsilon(1e-15));
  }
  // Periodic half arrays repeat their end value.
  CHECK(diff_first(0) == diff_first(24));
}

TEST_CASE("node average and complex data") {
  const Mesh mesh{5, 1.0, 0.0, Boundary::Periodic};
  Array y(6);
  y << 1, 2, 3, 4, 5, 6;
  const Array avg = node_average(y, mesh);
  CHECK(avg(0) == 1.5);
  CHECK(avg(4) == 5.5);

  ArrayX<std::complex<double>> z(5);
  for (int k = 0; k < 5; ++k) z(k) = {double(k), -double(k)};
  const auto dz = half_difference(z, mesh);
  CHECK(dz(1) == std::complex<double>(1.0, -1.0));
  CHECK(dz(0) == std::complex<double>(-4.0, 4.0));
}

TEST_CASE("length mismatches are reported") {
  const Mesh mesh{8, 0.1, 0.0, Boundary::Periodic};
  try {
    half_average(Array(Array::Zero(7)), mesh);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LengthMismatch);
  }
  CHECK_THROWS_AS(node_difference(Array(Array::Zero(8)), mesh), Error);
  CHECK_THROWS_AS(node_average(Array(Array::Zero(10)), mesh), Error);
  MeshState s{Array::Ones(4), Array::Ones(3), 0.0};
  CHECK_THROWS_AS(s.validate(), Error);
  MeshState negative{Array::Ones(4), Array::Ones(4), 0.0};
  negative.rho(2) = -0.1;
  CHECK_THROWS_AS(negative.validate(), Error);
}
