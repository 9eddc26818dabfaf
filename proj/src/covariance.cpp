#include "gemd/covariance.hpp"

#include <string>

namespace gemd {

CovarianceSequence::CovarianceSequence(std::vector<Eigen::MatrixXd> lags) : lags_(std::move(lags)) {
  if (lags_.empty()) throw data_error("CovarianceSequence: at least lag 0 is required");
  n_ = static_cast<int>(lags_[0].rows());
  for (const auto& m : lags_)
    if (m.rows() != n_ || m.cols() != n_)
      throw data_error("CovarianceSequence: inconsistent lag matrix dimensions");
}

const Eigen::MatrixXd& CovarianceSequence::lag(int k) const {
  if (k < 0 || k > max_lag()) throw data_error("CovarianceSequence: lag " + std::to_string(k) + " out of range");
  return lags_[static_cast<std::size_t>(k)];
}

double CovarianceSequence::cross(int a, int b, int k) const {
  if (k >= 0) return lag(k)(a - 1, b - 1);
  return lag(-k)(b - 1, a - 1);
}

CovarianceSequence empirical_autocovariance(const Eigen::MatrixXd& data, int max_lag) {
  const Eigen::Index T = data.cols();
  if (max_lag < 0) throw data_error("empirical_autocovariance: negative max_lag");
  if (T <= 10LL * max_lag)
    throw data_error("empirical_autocovariance: series too short for requested lag depth");
  std::vector<Eigen::MatrixXd> lags;
  lags.reserve(static_cast<std::size_t>(max_lag) + 1);
  for (int k = 0; k <= max_lag; ++k) {
    const Eigen::Index m = T - k;
    Eigen::MatrixXd rk = data.rightCols(m) * data.leftCols(m).transpose() / static_cast<double>(T);
    lags.push_back(std::move(rk));
  }
  return CovarianceSequence(std::move(lags));
}

}  // namespace gemd
