#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gemd/gemd.hpp"
#include "gemd/ldim.hpp"
#include "gemd/rng.hpp"

namespace gemd {

struct Violation {
  SeparationKind kind = SeparationKind::Feedthrough;
  int i = 0;  // candidate process (its lagged copies, for delayed statements)
  int j = 0;  // target process
  std::vector<int> conditioning;
  bool d_conn = false;
  bool separated = false;
  double fscore = 0.0;
};

struct FaithfulnessReport {
  std::string model_id;
  int lag_depth = 10;
  double tolerance = 1e-7;
  std::vector<Violation> violations;
  bool faithful() const { return violations.empty(); }
};

/// Compare both d-connection notions against the corresponding Wiener
/// separations on the population source, for every ordered pair and every
/// conditioning set (exhaustive for n <= 7, sampled above). Every mismatch is
/// a violation.
FaithfulnessReport check_faithfulness(const LdimModel& m, const MultiArrowGraph& representation,
                                      int lag_depth = 10, double tol = 1e-7,
                                      std::uint64_t subset_seed = 0);

/// Same, against the model's perfect graphical representation.
FaithfulnessReport check_faithfulness(const LdimModel& m, int lag_depth = 10, double tol = 1e-7);

struct ParameterLaw {
  double lo = 0.3;
  double hi = 0.6;
};

struct ScanTrial {
  int trial = 0;
  std::uint64_t seed = 0;
  bool unstable = false;
  bool faithful = false;
  int violation_count = 0;
};

struct ScanSummary {
  int trials = 0;
  int faithful = 0;
  int unfaithful = 0;
  int unstable = 0;
  std::vector<ScanTrial> rows;
};

/// Draw a model consistent with the graph: a feedthrough gain on every
/// single-headed edge, a one-step strictly causal coefficient on every
/// double-headed edge, white unit-variance sources.
LdimModel parameterize_graph(const MultiArrowGraph& g, const ParameterLaw& law, GaussianRng& rng);

/// Repeatedly parameterize the graph and check faithfulness; unstable draws
/// are counted, not retried.
ScanSummary zero_measure_scan(const MultiArrowGraph& g, int trials, const ParameterLaw& law,
                              std::uint64_t seed, int lag_depth = 10, double tol = 1e-7);

/// Scan over models from an arbitrary generator (one fresh generator state per
/// trial, derived from the master seed).
ScanSummary scan_models(const std::function<LdimModel(GaussianRng&)>& generate, int trials,
                        std::uint64_t seed, int lag_depth = 10, double tol = 1e-7);

}  // namespace gemd
