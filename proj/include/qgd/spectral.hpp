#pragma once

// Linearized scheme on a constant background state, its amplification
// matrix G(xi), and the stability conditions derived from it.
//
// With omega1 = 4 alpha beta theta, omega2 = beta sin(xi), theta = sin^2(xi/2):
//
//   G(xi) = [ 1 - omega1      -i omega2       ]
//           [ -i omega2       1 - kappa omega1 ]
//
// The von Neumann condition bounds the spectral radius of G; weak
// conservativeness (the L2 norm never exceeds its initial value) holds iff
// lambda_max(G^* G) <= 1 for every xi.

#include <Eigen/Core>

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qgd/core.hpp"
#include "qgd/grid.hpp"

namespace qgd {

using Complex = std::complex<double>;

struct LinearizedParams {
  double alpha = 0.5;
  double beta = 1.0;
  double kappa = 1.0;
  Regularization variant = Regularization::FullQGD;

  /// kappa = alpha_s + 1 for FullQGD, kappa = alpha_s for SimplifiedQHD.
  static LinearizedParams from_viscosity(double alpha, double beta, double alpha_s,
                                         Regularization variant);
  static LinearizedParams from_scheme(const SchemeConfig& cfg);

  /// Throws InvalidKappa for kappa < 1 under FullQGD or kappa < 0 under
  /// SimplifiedQHD, InvalidArgument for non-positive alpha or beta.
  void validate() const;
};

/// One step of the linearized scheme on a periodic mesh:
///   rho+ = rho - beta/2 (u_+ - u_-) + alpha beta (rho_+ - 2 rho + rho_-)
///   u+   = u - beta/2 (rho_+ - rho_-) + kappa alpha beta (u_+ - 2 u + u_-)
template <typename DerivedR, typename DerivedU>
std::pair<ArrayX<typename DerivedR::Scalar>, ArrayX<typename DerivedR::Scalar>> linearized_step(
    const Eigen::ArrayBase<DerivedR>& rho, const Eigen::ArrayBase<DerivedU>& u,
    const LinearizedParams& params) {
  using Scalar = typename DerivedR::Scalar;
  detail::require_length(u.size(), rho.size(), "linearized_step");
  const Mesh mesh{static_cast<int>(rho.size()), 1.0, 0.0, Boundary::Periodic};
  const ArrayX<Scalar> rp = shifted(rho, mesh, +1), rm = shifted(rho, mesh, -1);
  const ArrayX<Scalar> up = shifted(u, mesh, +1), um = shifted(u, mesh, -1);
  const double a = params.alpha, b = params.beta, k = params.kappa;
  ArrayX<Scalar> rho_next = rho - (0.5 * b) * (up - um) + (a * b) * (rp - 2.0 * rho + rm);
  ArrayX<Scalar> u_next = u - (0.5 * b) * (rp - rm) + (k * a * b) * (up - 2.0 * u + um);
  return {std::move(rho_next), std::move(u_next)};
}

struct AmplificationMatrix {
  Eigen::Matrix2cd entries;
  double xi = 0.0;
  double theta = 0.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
};

AmplificationMatrix amplification_matrix(double xi, const LinearizedParams& params);

/// G^* G in closed form (Hermitian).
Eigen::Matrix2cd gram_matrix(double xi, const LinearizedParams& params);

/// Largest eigenvalue of G^* G via the 2x2 Hermitian formula.
double gram_max_eigen(double xi, const LinearizedParams& params);

/// Eigenvalues of an arbitrary 2x2 complex matrix from its characteristic
/// polynomial, written as (a + d)/2 +- sqrt(((a - d)/2)^2 + b c).
std::array<Complex, 2> eigenvalues_2x2(const Eigen::Matrix2cd& m);

double spectral_radius(double xi, const LinearizedParams& params);

struct SpectralScan {
  double max_spectral_radius = 0.0;
  double max_gram_eigen = 0.0;
  double worst_xi_radius = 0.0;
  double worst_xi_gram = 0.0;
};

inline constexpr int kDefaultXiSamples = 4096;

/// Maxima over xi_j = 2 pi j / n_samples, j = 0 .. n_samples - 1.
SpectralScan spectral_radius_scan(const LinearizedParams& params,
                                  int n_samples = kDefaultXiSamples);

/// Right-hand sides of the closed-form conditions.
double necessary_threshold(const LinearizedParams& params);
double criterion_threshold(const LinearizedParams& params);
double sufficient_threshold_sw(double alpha);

/// beta <= threshold (non-strict).
bool necessary_condition(const LinearizedParams& params);
bool weak_conservativeness_criterion(const LinearizedParams& params);
/// Only meaningful for p(rho) = rho^2 with kappa = 7/3.
bool sufficient_condition_sw(double alpha, double beta);

double max_stable_beta(double alpha, double kappa, Regularization variant);

struct OptimalAlpha {
  double alpha;
  double beta_max;
};

/// Maximizer of the criterion's right-hand side over alpha. Empty for
/// SimplifiedQHD with alpha_s = 0, where no beta > 0 is admitted.
std::optional<OptimalAlpha> optimal_alpha(double kappa, Regularization variant);

struct StabilityVerdict {
  bool necessary_ok = false;
  bool criterion_ok = false;
  std::optional<bool> sufficient_ok;
  double necessary_threshold = 0.0;
  double criterion_threshold = 0.0;
  std::optional<double> sufficient_threshold;
  double oracle_spectral_radius = 0.0;
  double oracle_gram_max = 0.0;
};

/// Closed-form verdicts plus the sampled oracle. `shallow_water` enables the
/// sufficient condition, which is only known for p = rho^2 and kappa = 7/3.
StabilityVerdict evaluate_stability(const LinearizedParams& params, bool shallow_water,
                                    int n_samples = kDefaultXiSamples);

/// True when kappa equals 7/3 to six digits.
bool is_shallow_water_kappa(double kappa);

struct NormViolation {
  int trial;
  int step;
  double ratio;
};

struct NormReport {
  enum class Expectation { NonIncreasing, Growth, Indeterminate };
  Expectation expectation = Expectation::Indeterminate;
  bool passed = false;
  /// Largest ||y^m|| / ||y^0|| seen over all trials and steps.
  double max_growth = 0.0;
  /// Largest single-step ratio ||y^{m+1}|| / ||y^m||.
  double max_step_ratio = 0.0;
  std::vector<NormViolation> violations;
  std::string summary() const;
};

/// Runs the linearized scheme on periodic complex data and checks the norm
/// behaviour the criterion predicts. Inside the criterion every step must be
/// non-increasing (1e-12 relative). When beta exceeds the threshold by at
/// least 5% some trial must grow by more than 1e-6; trial 0 is then the
/// worst-xi Fourier mode on the mesh. Between the two nothing is asserted.
NormReport verify_norm_monotonicity(const LinearizedParams& params, int n, int steps, int trials,
                           std::uint64_t seed = 0x5eed);

/// Fourier mode y_k = v e^{i k xi_n}, xi_n = 2 pi n / N, with v the leading
/// eigenvector of G^* G(xi_n), for the n that maximizes lambda_max.
std::pair<ArrayX<Complex>, ArrayX<Complex>> worst_mode(const LinearizedParams& params, int n);

}  // namespace qgd
