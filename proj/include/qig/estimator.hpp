#pragma once

// Monte Carlo check of the Cramer-Rao machinery: multinomial sampling of a
// measurement model, maximum-likelihood fits, and empirical covariance
// against the inverse Fisher information.

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "qig/bloch.hpp"
#include "qig/infogeo.hpp"

namespace qig {

struct EstimationRun {
  ProbModel model;
  BlochCartesian truth;
  std::uint64_t trials = 0;       // M
  std::uint64_t repetitions = 1;  // R
  std::uint64_t seed = 0;
};

// Multinomial(M, p(truth)) counts for one repetition, drawn from Philox
// stream `repetition`. Throws ZeroProbability if some p_i <= 0 at truth.
std::vector<std::uint64_t> sample_counts(const EstimationRun& run, std::uint64_t repetition = 0);

inline constexpr double kBallMargin = 1e-9;

struct FitOptions {
  int max_iterations = 200;
  double perturbation = 0.05;  // size of the 8 extra starts around init
  double grad_tol = 1e-9;      // on |grad loglik| / total count
};

struct FitResult {
  Vec3 estimate;
  double loglik;
  int iterations;
  bool converged;  // interior stationary point reached
  bool boundary;   // estimate sits on the r = 1 - margin shell
};

// Local maximizer of sum n_i log p_i over r <= 1 - kBallMargin. Ascent uses
// Newton steps (Fisher scoring when the Hessian is not negative definite)
// with backtracking and radial projection, from init and 8 points around
// it. The best log-likelihood wins; near-ties go to the start closest to init.
FitResult mle_fit(const ProbModel& model, const std::vector<double>& counts, const Vec3& init,
                  const FitOptions& opts = {});

struct EfficiencyReport {
  Mat3 empirical_cov;
  Mat3 crb;  // F(truth)^{-1} / M
  Vec3 ratio_diag;
  Vec3 mean_estimate;
  std::size_t failures = 0;  // fits that did not converge; excluded from the statistics
  // tr(H_q(truth)^{-1} F_hat), F_hat the mean observed information per trial.
  double gm_trace = 0.0;
};

// Fits every repetition from the truth as initial point.
EfficiencyReport efficiency_report(const EstimationRun& run, const FitOptions& opts = {});

nlohmann::json to_json(const EstimationRun& run, const EfficiencyReport& rep);

}  // namespace qig
