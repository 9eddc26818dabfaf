#include "gemd/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gemd {

namespace {

constexpr double kRidgeEpsilon = 1e-10;

}  // namespace

void RegressorSpec::validate(int n) const {
  if (target < 1 || target > n || candidate < 1 || candidate > n)
    throw structure_error("RegressorSpec: target/candidate out of range");
  if (target == candidate) throw structure_error("RegressorSpec: target equals candidate");
  if (lag_depth < 1) throw structure_error("RegressorSpec: lag depth must be >= 1");
  for (int s : conditioning) {
    if (s < 1 || s > n) throw structure_error("RegressorSpec: conditioning vertex out of range");
    if (s == target || s == candidate)
      throw structure_error("RegressorSpec: conditioning set contains an endpoint");
  }
}

LeastSquaresSolution solve_projection(const CovarianceSequence& cov, int target,
                                      const std::vector<Regressor>& regressors) {
  const int m = static_cast<int>(regressors.size());
  const double v0 = cov.cross(target, target, 0);
  LeastSquaresSolution sol;
  if (m == 0) {
    sol.weights = Eigen::VectorXd();
    sol.residual_variance = v0;
    return sol;
  }

  Eigen::MatrixXd gram(m, m);
  Eigen::VectorXd rhs(m);
  for (int a = 0; a < m; ++a) {
    rhs(a) = cov.cross(target, regressors[static_cast<std::size_t>(a)].process,
                       regressors[static_cast<std::size_t>(a)].lag);
    for (int b = a; b < m; ++b) {
      const auto& ra = regressors[static_cast<std::size_t>(a)];
      const auto& rb = regressors[static_cast<std::size_t>(b)];
      const double v = cov.cross(ra.process, rb.process, rb.lag - ra.lag);
      gram(a, b) = v;
      gram(b, a) = v;
    }
  }

  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  Eigen::VectorXd w = ldlt.solve(rhs);
  const double scale = rhs.norm() + gram.norm() + 1.0;
  if (ldlt.info() != Eigen::Success || !(w.allFinite()) ||
      (gram * w - rhs).norm() > 1e-8 * scale) {
    Eigen::MatrixXd ridged = gram;
    ridged.diagonal().array() += kRidgeEpsilon;
    w = Eigen::LDLT<Eigen::MatrixXd>(ridged).solve(rhs);
    sol.ridge_flagged = true;
  }
  sol.weights = std::move(w);
  // exact quadratic form, valid also for the ridge fallback
  sol.residual_variance =
      std::max(0.0, v0 - 2.0 * rhs.dot(sol.weights) + sol.weights.dot(gram * sol.weights));
  return sol;
}

FilterResult project(const CovarianceSequence& cov, const RegressorSpec& spec) {
  const int n = cov.process_count();
  spec.validate(n);
  if (cov.max_lag() < spec.lag_depth)
    throw data_error("project: covariance source does not cover the requested lag depth");

  // The design always contains every process's lags 1..L (the Granger
  // embedding). The tested block is the candidate's contemporaneous value or,
  // in delayed-only mode, the candidate's lags.
  std::vector<Regressor> full;
  if (spec.mode == CandidateMode::Contemporaneous) full.push_back({spec.candidate, 0});
  for (int s : spec.conditioning) full.push_back({s, 0});
  for (int lag = 1; lag <= spec.lag_depth; ++lag)
    for (int p = 1; p <= n; ++p) full.push_back({p, lag});

  std::vector<Regressor> reduced;
  reduced.reserve(full.size());
  for (const auto& r : full) {
    const bool is_candidate_block = (spec.mode == CandidateMode::Contemporaneous)
                                        ? (r.process == spec.candidate && r.lag == 0)
                                        : (r.process == spec.candidate && r.lag >= 1);
    if (!is_candidate_block) reduced.push_back(r);
  }

  const LeastSquaresSolution with = solve_projection(cov, spec.target, full);
  const LeastSquaresSolution without = solve_projection(cov, spec.target, reduced);

  FilterResult res;
  res.regressors = full;
  res.coefficients = with.weights;
  res.target_variance = cov.cross(spec.target, spec.target, 0);
  res.residual_variance = with.residual_variance;
  res.baseline_variance = without.residual_variance;
  res.ridge_flagged = with.ridge_flagged || without.ridge_flagged;

  std::vector<double> delayed_coeffs;
  for (std::size_t k = 0; k < full.size(); ++k) {
    if (full[k].process != spec.candidate) continue;
    if (full[k].lag == 0)
      res.candidate_lag0_coeff = with.weights(static_cast<Eigen::Index>(k));
    else
      delayed_coeffs.push_back(with.weights(static_cast<Eigen::Index>(k)));
  }
  res.candidate_delayed_coeffs =
      Eigen::Map<Eigen::VectorXd>(delayed_coeffs.data(), static_cast<Eigen::Index>(delayed_coeffs.size()));

  if (res.baseline_variance <= 1e-300)
    res.fscore = 0.0;
  else
    res.fscore = std::clamp(1.0 - res.residual_variance / res.baseline_variance, 0.0, 1.0);
  return res;
}

namespace {

std::pair<bool, FilterResult> separated(const CovarianceSequence& cov, int target, int candidate,
                                        const std::vector<int>& s, int lag_depth, double tol,
                                        CandidateMode mode) {
  RegressorSpec spec;
  spec.target = target;
  spec.candidate = candidate;
  spec.mode = mode;
  spec.conditioning = s;
  spec.lag_depth = lag_depth;
  FilterResult res = project(cov, spec);
  return {res.fscore <= tol, std::move(res)};
}

}  // namespace

std::pair<bool, FilterResult> feedthrough_separated(const CovarianceSequence& cov, int target,
                                                    int candidate, const std::vector<int>& s,
                                                    int lag_depth, double tol) {
  return separated(cov, target, candidate, s, lag_depth, tol, CandidateMode::Contemporaneous);
}

std::pair<bool, FilterResult> delayed_separated(const CovarianceSequence& cov, int target,
                                                int candidate, const std::vector<int>& s,
                                                int lag_depth, double tol) {
  return separated(cov, target, candidate, s, lag_depth, tol, CandidateMode::DelayedOnly);
}

std::pair<double, std::vector<int>> fscore_min_over_sets(const CovarianceSequence& cov, int target,
                                                         int candidate, CandidateMode mode,
                                                         const std::vector<std::vector<int>>& sets,
                                                         int lag_depth) {
  if (sets.empty()) throw data_error("fscore_min_over_sets: no candidate sets");
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_set;
  for (const auto& s : sets) {
    RegressorSpec spec;
    spec.target = target;
    spec.candidate = candidate;
    spec.mode = mode;
    spec.conditioning = s;
    spec.lag_depth = lag_depth;
    const FilterResult res = project(cov, spec);
    if (res.fscore < best) {
      best = res.fscore;
      best_set = s;
    }
  }
  return {best, best_set};
}

std::vector<std::vector<int>> enumerate_conditioning_sets(int n, int i, int j, int max_size) {
  std::vector<int> pool;
  for (int v = 1; v <= n; ++v)
    if (v != i && v != j) pool.push_back(v);
  const int cap = max_size < 0 ? static_cast<int>(pool.size())
                               : std::min<int>(max_size, static_cast<int>(pool.size()));
  std::vector<std::vector<int>> out;
  std::vector<int> idx;
  for (int size = 0; size <= cap; ++size) {
    idx.assign(static_cast<std::size_t>(size), 0);
    for (int k = 0; k < size; ++k) idx[static_cast<std::size_t>(k)] = k;
    while (true) {
      std::vector<int> s(static_cast<std::size_t>(size));
      for (int k = 0; k < size; ++k) s[static_cast<std::size_t>(k)] = pool[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
      out.push_back(std::move(s));
      if (size == 0) break;
      int k = size - 1;
      while (k >= 0 && idx[static_cast<std::size_t>(k)] == static_cast<int>(pool.size()) - size + k) --k;
      if (k < 0) break;
      ++idx[static_cast<std::size_t>(k)];
      for (int m = k + 1; m < size; ++m) idx[static_cast<std::size_t>(m)] = idx[static_cast<std::size_t>(m - 1)] + 1;
    }
  }
  return out;
}

}  // namespace gemd
