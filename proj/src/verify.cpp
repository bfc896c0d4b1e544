#include "qgd/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qgd/schemes.hpp"
#include "qgd/spectral.hpp"

namespace qgd {

namespace {

std::vector<double> grid(double start, double stop, double step) {
  std::vector<double> out;
  const int n = static_cast<int>(std::lround((stop - start) / step));
  for (int i = 0; i <= n; ++i) out.push_back(start + i * step);
  return out;
}

struct Variant {
  double kappa;
  Regularization regularization;
};

}  // namespace

SuiteResult verify_oracle_equivalence(int n_samples) {
  const std::vector<Variant> variants{{1.0, Regularization::FullQGD},
                                      {7.0 / 3.0, Regularization::FullQGD},
                                      {4.0, Regularization::FullQGD},
                                      {0.0, Regularization::SimplifiedQHD},
                                      {0.5, Regularization::SimplifiedQHD},
                                      {1.0, Regularization::SimplifiedQHD},
                                      {2.0, Regularization::SimplifiedQHD}};
  int compared = 0, disagreements = 0;
  std::ostringstream bad;
  for (const auto& v : variants) {
    for (double alpha : grid(0.05, 1.5, 0.05)) {
      for (double beta : grid(0.05, 1.6, 0.05)) {
        const LinearizedParams p{alpha, beta, v.kappa, v.regularization};
        const auto scan = spectral_radius_scan(p, n_samples);
        const double nec = necessary_threshold(p), crit = criterion_threshold(p);
        if (std::abs(beta - nec) > 1e-6) {
          ++compared;
          if ((beta <= nec) != (scan.max_spectral_radius <= 1.0 + 1e-10)) {
            ++disagreements;
            bad << " nec(" << alpha << "," << beta << "," << v.kappa << ")";
          }
        }
        if (std::abs(beta - crit) > 1e-6) {
          ++compared;
          if ((beta <= crit) != (scan.max_gram_eigen <= 1.0 + 1e-10)) {
            ++disagreements;
            bad << " crit(" << alpha << "," << beta << "," << v.kappa << ")";
          }
        }
      }
    }
  }
  std::ostringstream detail;
  detail << compared << " comparisons, " << disagreements << " disagreements" << bad.str();
  return {"oracle equivalence", disagreements == 0, detail.str()};
}

SuiteResult verify_weak_conservativeness(int points, int n, int steps) {
  std::mt19937_64 rng(20180587);
  std::uniform_real_distribution<double> alpha_dist(0.05, 1.5), kappa_dist(1.0, 4.0),
      frac(0.05, 1.0), excess(1.05, 1.6);
  int inside_ok = 0, outside_ok = 0;
  std::ostringstream bad;
  for (int i = 0; i < points; ++i) {
    const double alpha = alpha_dist(rng), kappa = kappa_dist(rng);
    const double limit = max_stable_beta(alpha, kappa, Regularization::FullQGD);
    const LinearizedParams in{alpha, frac(rng) * limit, kappa, Regularization::FullQGD};
    const LinearizedParams out{alpha, excess(rng) * limit, kappa, Regularization::FullQGD};
    const auto rin = verify_norm_monotonicity(in, n, steps, 2, rng());
    const auto rout = verify_norm_monotonicity(out, n, steps, 1, rng());
    inside_ok += rin.passed;
    outside_ok += rout.passed;
    if (!rin.passed) bad << " inside(" << alpha << "," << in.beta << "," << kappa << ")";
    if (!rout.passed) bad << " outside(" << alpha << "," << out.beta << "," << kappa << ")";
  }
  std::ostringstream detail;
  detail << inside_ok << "/" << points << " non-increasing inside, " << outside_ok << "/" << points
         << " growing outside" << bad.str();
  return {"weak conservativeness", inside_ok == points && outside_ok == points, detail.str()};
}

SuiteResult verify_scalar_gram() {
  double worst = 0.0;
  for (double alpha : grid(0.05, 1.5, 0.05)) {
    for (double beta : grid(0.05, 1.6, 0.05)) {
      const LinearizedParams p{alpha, beta, 1.0, Regularization::FullQGD};
      for (int j = 0; j < kDefaultXiSamples; ++j) {
        const double xi = 2.0 * std::numbers::pi * j / kDefaultXiSamples;
        worst = std::max(worst, std::abs(gram_matrix(xi, p)(0, 1)));
      }
    }
  }
  std::ostringstream detail;
  detail << "max |offdiag| = " << worst;
  return {"kappa = 1 scalar Gram matrix", worst < 1e-15, detail.str()};
}

SuiteResult verify_inclusion_chain() {
  const double kappa = 7.0 / 3.0;
  const double alpha_star = optimal_alpha(kappa, Regularization::FullQGD)->alpha;
  int failures = 0;
  std::ostringstream bad;
  for (double alpha : grid(0.05, 1.5, 0.05)) {
    const LinearizedParams p{alpha, 1.0, kappa, Regularization::FullQGD};
    const double suff = sufficient_threshold_sw(alpha), crit = criterion_threshold(p),
                 nec = necessary_threshold(p);
    bool ok = suff <= crit && crit <= nec;
    ok = ok && (alpha < alpha_star ? crit < nec : std::abs(crit - nec) <= 1e-14);
    if (!ok) {
      ++failures;
      bad << " alpha=" << alpha;
    }
  }
  return {"inclusion chain (kappa = 7/3)", failures == 0,
          failures == 0 ? "sufficient <= criterion <= necessary on the grid" : "failed at" + bad.str()};
}

SuiteResult verify_scheme_structure(const GasModel& model) {
  std::ostringstream detail;
  bool ok = true;
  const Mesh mesh{64, 1.0 / 64.0, 0.0, Boundary::Periodic};
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  Array r(mesh.n), v(mesh.n);
  for (int k = 0; k < mesh.n; ++k) {
    r(k) = normal(rng);
    v(k) = normal(rng);
  }

  const double rho_star = 1.0;
  SchemeConfig base;
  base.alpha = 0.4;
  base.alpha_s = 4.0 / 3.0;
  base.beta = 0.4;
  base.c_ref = model.sound_speed(rho_star);

  for (auto kind : {SchemeKind::Standard, SchemeKind::Enthalpy}) {
    for (auto variant : {Regularization::FullQGD, Regularization::SimplifiedQHD}) {
      SchemeConfig cfg = base;
      cfg.scheme = kind;
      cfg.regularization = variant;
      const std::string tag = std::string(to_string(kind)) + "/" + to_string(variant);

      // Constant state.
      MeshState constant{Array::Constant(mesh.n, 0.7), Array::Constant(mesh.n, 0.3), 0.0};
      MeshState s = constant;
      for (int m = 0; m < 1000; ++m) s = step(s, mesh, model, cfg);
      const double drift = std::max((s.rho - constant.rho).abs().maxCoeff(),
                                    (s.u - constant.u).abs().maxCoeff());
      if (!(drift < 1e-12)) {
        ok = false;
        detail << " " << tag << " fixed-point drift " << drift << ";";
      }

      // Conservation on a smooth periodic state.
      MeshState smooth{rho_star * (1.0 + 0.1 * r.tanh()), 0.1 * v.tanh(), 0.0};
      const double mass0 = smooth.rho.sum(), mom0 = (smooth.rho * smooth.u).sum();
      for (int m = 0; m < 1000; ++m) smooth = step(smooth, mesh, model, cfg);
      const double mass_err = std::abs(smooth.rho.sum() - mass0) / mass0;
      if (!(mass_err < 1e-12)) {
        ok = false;
        detail << " " << tag << " mass drift " << mass_err << ";";
      }
      if (kind == SchemeKind::Standard) {
        const double mom_err = std::abs((smooth.rho * smooth.u).sum() - mom0) / mass0;
        if (!(mom_err < 1e-12)) {
          ok = false;
          detail << " " << tag << " momentum drift " << mom_err << ";";
        }
      }

      // Linearization mismatch must decay like eps.
      const auto params = LinearizedParams::from_scheme(cfg);
      const auto [rl, ul] = linearized_step(r, v, params);
      double previous = 0.0;
      for (double eps : {1e-4, 1e-5, 1e-6}) {
        const MeshState perturbed{rho_star * (1.0 + eps * r), base.c_ref * eps * v, 0.0};
        const auto next = step(perturbed, mesh, model, cfg);
        const double mismatch =
            std::max(((next.rho / rho_star - 1.0) / eps - rl).abs().maxCoeff(),
                     (next.u / (base.c_ref * eps) - ul).abs().maxCoeff());
        if (previous > 0.0) {
          const double ratio = previous / mismatch;
          if (!(ratio > 7.0 && ratio < 13.0)) {
            ok = false;
            detail << " " << tag << " linearization ratio " << ratio << ";";
          }
        }
        previous = mismatch;
      }
    }
  }
  return {"nonlinear scheme structure", ok, ok ? "fixed points, conservation, linearization" : detail.str()};
}

std::vector<SuiteResult> run_verification(const RunConfig& config) {
  return {verify_oracle_equivalence(), verify_weak_conservativeness(), verify_scalar_gram(),
          verify_inclusion_chain(), verify_scheme_structure(config.gas.model())};
}

}  // namespace qgd
