#include "qgd/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace qgd {

LinearizedParams LinearizedParams::from_viscosity(double alpha, double beta, double alpha_s,
                                                  Regularization variant) {
  LinearizedParams p{alpha, beta, variant == Regularization::FullQGD ? alpha_s + 1.0 : alpha_s,
                     variant};
  p.validate();
  return p;
}

LinearizedParams LinearizedParams::from_scheme(const SchemeConfig& cfg) {
  return from_viscosity(cfg.alpha, cfg.beta, cfg.alpha_s, cfg.regularization);
}

void LinearizedParams::validate() const {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be > 0");
  if (!(beta > 0.0)) throw Error(ErrorCode::InvalidArgument, "beta must be > 0");
  if (variant == Regularization::FullQGD && !(kappa >= 1.0)) {
    throw Error(ErrorCode::InvalidKappa,
                "FullQGD requires kappa = alpha_s + 1 >= 1, got " + std::to_string(kappa));
  }
  if (variant == Regularization::SimplifiedQHD && !(kappa >= 0.0)) {
    throw Error(ErrorCode::InvalidKappa,
                "SimplifiedQHD requires kappa = alpha_s >= 0, got " + std::to_string(kappa));
  }
}

AmplificationMatrix amplification_matrix(double xi, const LinearizedParams& params) {
  AmplificationMatrix g;
  g.xi = xi;
  const double s = std::sin(0.5 * xi);
  g.theta = s * s;
  g.omega1 = 4.0 * params.alpha * params.beta * g.theta;
  g.omega2 = params.beta * std::sin(xi);
  const Complex off(0.0, -g.omega2);
  g.entries << 1.0 - g.omega1, off, off, 1.0 - params.kappa * g.omega1;
  return g;
}

Eigen::Matrix2cd gram_matrix(double xi, const LinearizedParams& params) {
  const auto g = amplification_matrix(xi, params);
  const double w1 = g.omega1, w2 = g.omega2, k = params.kappa;
  // (G^* G)_{01} = i (1 - kappa) omega1 omega2; the transposed sign pattern
  // belongs to G G^*, which has the same eigenvalues but other eigenvectors.
  const double coupling = (1.0 - k) * w1 * w2;
  Eigen::Matrix2cd m;
  m << (1.0 - w1) * (1.0 - w1) + w2 * w2, Complex(0.0, coupling), Complex(0.0, -coupling),
      (1.0 - k * w1) * (1.0 - k * w1) + w2 * w2;
  return m;
}

double gram_max_eigen(double xi, const LinearizedParams& params) {
  const auto m = gram_matrix(xi, params);
  const double a = m(0, 0).real(), d = m(1, 1).real();
  const double half_spread = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
  return 0.5 * (a + d) + half_spread;
}

std::array<Complex, 2> eigenvalues_2x2(const Eigen::Matrix2cd& m) {
  const Complex mean = 0.5 * (m(0, 0) + m(1, 1));
  const Complex half_diff = 0.5 * (m(0, 0) - m(1, 1));
  const Complex root = std::sqrt(half_diff * half_diff + m(0, 1) * m(1, 0));
  return {mean + root, mean - root};
}

double spectral_radius(double xi, const LinearizedParams& params) {
  const auto ev = eigenvalues_2x2(amplification_matrix(xi, params).entries);
  return std::max(std::abs(ev[0]), std::abs(ev[1]));
}

SpectralScan spectral_radius_scan(const LinearizedParams& params, int n_samples) {
  if (n_samples < 64) throw Error(ErrorCode::InvalidArgument, "n_samples must be >= 64");
  SpectralScan scan;
  // Both spectra are symmetric about xi = pi, so j <= n/2 covers the grid.
  for (int j = 0; j <= n_samples / 2; ++j) {
    const double xi = 2.0 * std::numbers::pi * j / n_samples;
    const double radius = spectral_radius(xi, params);
    const double gram = gram_max_eigen(xi, params);
    if (radius > scan.max_spectral_radius) {
      scan.max_spectral_radius = radius;
      scan.worst_xi_radius = xi;
    }
    if (gram > scan.max_gram_eigen) {
      scan.max_gram_eigen = gram;
      scan.worst_xi_gram = xi;
    }
  }
  return scan;
}

// For kappa >= 1 the thresholds are those of the full regularization; for
// 0 <= kappa < 1 (simplified regularization only) the roles of 1 and kappa
// swap in the second branch.
double necessary_threshold(const LinearizedParams& params) {
  params.validate();
  const double a = params.alpha, k = params.kappa;
  return std::min((k + 1.0) * a, 1.0 / (2.0 * std::max(k, 1.0) * a));
}

double criterion_threshold(const LinearizedParams& params) {
  params.validate();
  return max_stable_beta(params.alpha, params.kappa, params.variant);
}

double max_stable_beta(double alpha, double kappa, Regularization variant) {
  LinearizedParams{alpha, 1.0, kappa, variant}.validate();
  return std::min(2.0 * std::min(kappa, 1.0) * alpha, 1.0 / (2.0 * std::max(kappa, 1.0) * alpha));
}

double sufficient_threshold_sw(double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be > 0");
  const double a = alpha;
  return std::min(2.0 * a / (1.0 + 6.0 * a + 4.0 * a * a),
                  4.0 * a / (1.0 + 6.0 * a + 16.0 * a * a));
}

bool necessary_condition(const LinearizedParams& params) {
  return params.beta <= necessary_threshold(params);
}

bool weak_conservativeness_criterion(const LinearizedParams& params) {
  return params.beta <= criterion_threshold(params);
}

bool sufficient_condition_sw(double alpha, double beta) {
  return beta <= sufficient_threshold_sw(alpha);
}

std::optional<OptimalAlpha> optimal_alpha(double kappa, Regularization variant) {
  LinearizedParams{1.0, 1.0, kappa, variant}.validate();
  if (kappa == 0.0) return std::nullopt;
  const double root = std::sqrt(kappa);
  // Intersection of the increasing and decreasing branches of the criterion.
  return OptimalAlpha{1.0 / (2.0 * root), kappa >= 1.0 ? 1.0 / root : root};
}

bool is_shallow_water_kappa(double kappa) { return std::abs(kappa - 7.0 / 3.0) < 1e-6; }

StabilityVerdict evaluate_stability(const LinearizedParams& params, bool shallow_water,
                                    int n_samples) {
  params.validate();
  StabilityVerdict v;
  v.necessary_threshold = necessary_threshold(params);
  v.criterion_threshold = criterion_threshold(params);
  v.necessary_ok = params.beta <= v.necessary_threshold;
  v.criterion_ok = params.beta <= v.criterion_threshold;
  if (shallow_water) {
    v.sufficient_threshold = sufficient_threshold_sw(params.alpha);
    v.sufficient_ok = params.beta <= *v.sufficient_threshold;
  }
  const auto scan = spectral_radius_scan(params, n_samples);
  v.oracle_spectral_radius = scan.max_spectral_radius;
  v.oracle_gram_max = scan.max_gram_eigen;
  return v;
}

namespace {

double norm(const ArrayX<Complex>& rho, const ArrayX<Complex>& u) {
  return std::sqrt(rho.abs2().sum() + u.abs2().sum());
}

}  // namespace

std::pair<ArrayX<Complex>, ArrayX<Complex>> worst_mode(const LinearizedParams& params, int n) {
  int best = 0;
  double best_value = -1.0;
  for (int j = 0; j < n; ++j) {
    const double value = gram_max_eigen(2.0 * std::numbers::pi * j / n, params);
    if (value > best_value) {
      best_value = value;
      best = j;
    }
  }
  const double xi = 2.0 * std::numbers::pi * best / n;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(gram_matrix(xi, params));
  const Eigen::Vector2cd v = solver.eigenvectors().col(1);
  ArrayX<Complex> rho(n), u(n);
  for (int k = 0; k < n; ++k) {
    const Complex phase = std::polar(1.0, k * xi);
    rho(k) = v(0) * phase;
    u(k) = v(1) * phase;
  }
  return {std::move(rho), std::move(u)};
}

NormReport verify_norm_monotonicity(const LinearizedParams& params, int n, int steps, int trials,
                           std::uint64_t seed) {
  params.validate();
  if (n < 3 || steps < 1 || trials < 1) {
    throw Error(ErrorCode::InvalidArgument, "verify_norm_monotonicity needs n >= 3, steps >= 1, trials >= 1");
  }
  NormReport report;
  const double threshold = criterion_threshold(params);
  if (params.beta <= threshold) {
    report.expectation = NormReport::Expectation::NonIncreasing;
  } else if (params.beta >= 1.05 * threshold) {
    report.expectation = NormReport::Expectation::Growth;
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  auto random_array = [&] {
    ArrayX<Complex> a(n);
    for (auto& z : a) z = Complex(normal(rng), normal(rng));
    return a;
  };

  bool grew = false;
  for (int trial = 0; trial < trials; ++trial) {
    ArrayX<Complex> rho, u;
    if (trial == 0 && report.expectation == NormReport::Expectation::Growth) {
      std::tie(rho, u) = worst_mode(params, n);
    } else {
      rho = random_array();
      u = random_array();
    }
    const double initial = norm(rho, u);
    double previous = initial;
    for (int m = 0; m < steps; ++m) {
      std::tie(rho, u) = linearized_step(rho, u, params);
      const double current = norm(rho, u);
      if (previous > 0.0) {
        const double ratio = current / previous;
        report.max_step_ratio = std::max(report.max_step_ratio, ratio);
        if (report.expectation == NormReport::Expectation::NonIncreasing &&
            current > previous * (1.0 + 1e-12)) {
          report.violations.push_back({trial, m + 1, ratio});
        }
      }
      if (initial > 0.0) {
        const double growth = current / initial;
        report.max_growth = std::max(report.max_growth, growth);
        if (growth > 1.0 + 1e-6) grew = true;
      }
      previous = current;
    }
  }

  switch (report.expectation) {
    case NormReport::Expectation::NonIncreasing: report.passed = report.violations.empty(); break;
    case NormReport::Expectation::Growth: report.passed = grew; break;
    case NormReport::Expectation::Indeterminate: report.passed = true; break;
  }
  return report;
}

std::string NormReport::summary() const {
  std::ostringstream os;
  os << (passed ? "pass" : "FAIL") << " expectation="
     << (expectation == Expectation::NonIncreasing ? "non-increasing"
         : expectation == Expectation::Growth      ? "growth"
                                                   : "indeterminate")
     << " max_growth=" << max_growth << " max_step_ratio=" << max_step_ratio;
  for (const auto& v : violations) {
    os << "\n  trial " << v.trial << " step " << v.step << " ratio " << v.ratio;
  }
  return os.str();
}

}  // namespace qgd
