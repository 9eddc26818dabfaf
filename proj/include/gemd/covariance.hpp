#pragma once

#include <Eigen/Dense>

#include <vector>

#include "gemd/lti.hpp"

namespace gemd {

/// Joint autocovariance sequence of an n-dimensional stationary process:
/// lag(k) = E[y(t) y(t-k)^T] for k = 0..max_lag. Population and empirical
/// sources both produce this type; consumers never care which.
class CovarianceSequence {
 public:
  CovarianceSequence() = default;
  explicit CovarianceSequence(std::vector<Eigen::MatrixXd> lags);

  int process_count() const { return n_; }
  int max_lag() const { return static_cast<int>(lags_.size()) - 1; }
  const Eigen::MatrixXd& lag(int k) const;

  /// E[y_a(t) y_b(t-k)] for any |k| <= max_lag; processes are 1-based.
  double cross(int a, int b, int k) const;

 private:
  int n_ = 0;
  std::vector<Eigen::MatrixXd> lags_;
};

/// Biased estimator R(k) = (1/T) sum_t y(t) y(t-k)^T from an n x T sample
/// array. Requires T > 10 * max_lag.
CovarianceSequence empirical_autocovariance(const Eigen::MatrixXd& data, int max_lag);

}  // namespace gemd
