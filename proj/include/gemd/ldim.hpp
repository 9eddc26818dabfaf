#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gemd/covariance.hpp"
#include "gemd/graph.hpp"
#include "gemd/lti.hpp"

namespace gemd {

/// Linear dynamic influence model y = H(z) y + F(z) u with diagonal noise
/// shaping F and independent unit-spectral sources u scaled by per-channel
/// variances. H entries are keyed (from, to): the entry for (i, j) is the
/// transfer function H_{ji} applied to y_i in the equation for y_j.
struct LdimModel {
  int n = 0;
  std::map<std::pair<int, int>, TransferFunctionD> dynamics;
  std::vector<TransferFunctionD> noise_shaping;  // F_j, size n
  Eigen::VectorXd noise_variances;               // Var(u_j), size n

  LdimModel() = default;
  explicit LdimModel(int processes);

  void set_dynamics(int from, int to, TransferFunctionD tf);
  /// Nonzero dynamics entry or nullptr.
  const TransferFunctionD* entry(int from, int to) const;
};

struct ValidationIssue {
  std::string check;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> failures;
  bool ok() const { return failures.empty(); }
  std::string to_string() const;
};

ValidationReport validate(const LdimModel& m);

/// Edge (i, j) is single-headed iff H_{ji} has a nonzero feedthrough gain,
/// double-headed iff H_{ji} is nonzero and strictly causal. Self-dynamics are
/// not drawn as edges.
MultiArrowGraph perfect_representation(const LdimModel& m);

/// x(t+1) = A x(t) + B u(t), y(t) = C x(t) + D u(t), Cov(u) = Q.
struct StateSpaceRealization {
  Eigen::MatrixXd A, B, C, D, Q;
  double spectral_radius = 0.0;
  int state_dim() const { return static_cast<int>(A.rows()); }
};

/// Closed-loop realization of the output process. Throws stability_error when
/// the closed loop has spectral radius >= 1.
StateSpaceRealization to_state_space(const LdimModel& m);

/// Exact stationary autocovariances R(0..max_lag) via the discrete Lyapunov
/// equation of the realization.
CovarianceSequence population_autocovariance(const LdimModel& m, int max_lag);

/// Spectral density (I - H)^{-1} F Sigma_u F^* (I - H)^{-*} at z = e^{i omega}.
Eigen::MatrixXcd psd(const LdimModel& m, double omega);

/// Stationary Gaussian sample path, n x horizon, burn-in discarded.
/// Deterministic given the seed.
Eigen::MatrixXd simulate(const LdimModel& m, int horizon, std::uint64_t seed);

}  // namespace gemd
