#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

#include "gemd/covariance.hpp"

namespace gemd {

enum class CandidateMode { Contemporaneous, DelayedOnly };

/// One regressor: the value of a process at a fixed lag behind the target.
struct Regressor {
  int process = 0;
  int lag = 0;
  bool operator==(const Regressor& o) const { return process == o.process && lag == o.lag; }
};

/// Finite-lag least-squares surrogate of a causal Wiener problem. The target
/// y_j(t) is predicted from the candidate (contemporaneous value, or lags
/// 1..L in delayed-only mode), the contemporaneous conditioning processes,
/// and lags 1..L of every process.
struct RegressorSpec {
  int target = 0;
  int candidate = 0;
  CandidateMode mode = CandidateMode::Contemporaneous;
  std::vector<int> conditioning;
  int lag_depth = 10;

  void validate(int n) const;
};

struct FilterResult {
  std::vector<Regressor> regressors;
  Eigen::VectorXd coefficients;
  double target_variance = 0.0;
  double residual_variance = 0.0;    // with the candidate block
  double baseline_variance = 0.0;    // candidate block removed
  double candidate_lag0_coeff = 0.0;
  Eigen::VectorXd candidate_delayed_coeffs;
  double fscore = 0.0;  // 1 - residual/baseline, clamped to [0, 1]
  bool ridge_flagged = false;
};

struct LeastSquaresSolution {
  Eigen::VectorXd weights;
  double residual_variance = 0.0;
  bool ridge_flagged = false;
};

/// Solve the normal equations for predicting the target at lag 0 from an
/// arbitrary list of lagged regressors. Gram entries come straight from the
/// covariance sequence; a singular Gram matrix falls back to a ridge solve
/// with a fixed epsilon of 1e-10 and flags the result.
LeastSquaresSolution solve_projection(const CovarianceSequence& cov, int target,
                                      const std::vector<Regressor>& regressors);

FilterResult project(const CovarianceSequence& cov, const RegressorSpec& spec);

/// Separation tests: the candidate's marginal variance reduction, relative to
/// the projection without it, must not exceed tol.
std::pair<bool, FilterResult> feedthrough_separated(const CovarianceSequence& cov, int target,
                                                    int candidate, const std::vector<int>& s,
                                                    int lag_depth, double tol);
std::pair<bool, FilterResult> delayed_separated(const CovarianceSequence& cov, int target,
                                                int candidate, const std::vector<int>& s,
                                                int lag_depth, double tol);

/// Minimum f-score over the given conditioning sets and the first set
/// attaining it under the given order.
std::pair<double, std::vector<int>> fscore_min_over_sets(const CovarianceSequence& cov, int target,
                                                         int candidate, CandidateMode mode,
                                                         const std::vector<std::vector<int>>& sets,
                                                         int lag_depth);

/// All subsets of {1..n} \ {i, j} with size <= max_size, ordered by
/// increasing cardinality and then lexicographically.
std::vector<std::vector<int>> enumerate_conditioning_sets(int n, int i, int j, int max_size);

}  // namespace gemd
