#pragma once

#include <string>
#include <vector>

#include "qgd/config.hpp"
#include "qgd/spectral.hpp"

namespace qgd {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Closed-form verdicts against the sampled oracle over
/// alpha in {0.05..1.5}, beta in {0.05..1.6} (step 0.05), kappa in {1, 7/3, 4}
/// (FullQGD) and alpha_s in {0, 0.5, 1, 2} (SimplifiedQHD). Points within
/// 1e-6 of a threshold are skipped.
SuiteResult verify_oracle_equivalence(int n_samples = kDefaultXiSamples);

/// Norm monotonicity inside the criterion and growth outside it.
SuiteResult verify_weak_conservativeness(int points = 20, int n = 128, int steps = 200);

/// Off-diagonal of G^* G vanishes for kappa = 1.
SuiteResult verify_scalar_gram();

/// sufficient <= criterion <= necessary at kappa = 7/3.
SuiteResult verify_inclusion_chain();

/// Fixed points, discrete conservation and linearization consistency of the
/// nonlinear schemes for the configured gas model.
SuiteResult verify_scheme_structure(const GasModel& model);

std::vector<SuiteResult> run_verification(const RunConfig& config);

}  // namespace qgd
