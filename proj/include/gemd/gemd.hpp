#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gemd/covariance.hpp"
#include "gemd/graph.hpp"
#include "gemd/projection.hpp"

namespace gemd {

struct GemdParams {
  double threshold = 1e-6;  // f-score at or below this counts as separated
  int lag_depth = 10;
  int max_cond_size = -1;  // -1: exhaustive (n - 2)
};

enum class SeparationKind { Feedthrough, Delayed };

/// Outcome of one separating-set search. For feedthrough records the pair is
/// stored (i, j) with i < j and the projection target is j. For delayed
/// records i is the process whose lagged copies were tested and j the target.
struct SeparationRecord {
  int i = 0;
  int j = 0;
  SeparationKind kind = SeparationKind::Feedthrough;
  std::optional<std::vector<int>> separating_set;  // first set found, search order
  std::vector<std::pair<std::vector<int>, double>> fscores;  // every set tested, in order

  double min_fscore() const;
};

struct ReconstructionResult {
  int n = 0;
  PartialGraph graph;
  GemdParams params;
  std::vector<SeparationRecord> records;

  const SeparationRecord* feedthrough_record(int a, int b) const;
  const SeparationRecord* delayed_record(int candidate, int target) const;
};

/// Per-pair separating-set search: a failed feedthrough search draws an
/// undirected edge; a successful one is followed by the two delayed searches,
/// whose failures draw double-headed edges from the lagged candidate toward
/// the target.
ReconstructionResult gemd(const CovarianceSequence& cov, int n, const GemdParams& params);

ReconstructionResult gemd_from_data(const Eigen::MatrixXd& data, const GemdParams& params);

struct PairScore {
  double fscore = 0.0;
  std::vector<int> min_set;
};

/// Raw material for ROC sweeps: minimum f-score over all conditioning sets for
/// the feedthrough test of every unordered pair and the delayed test of every
/// ordered pair, with the minimizing sets.
struct ScoreTable {
  int n = 0;
  std::map<std::pair<int, int>, PairScore> feedthrough;  // key (i, j), i < j
  std::map<std::pair<int, int>, PairScore> delayed;      // key (candidate, target)
};

ScoreTable pairwise_scores(const CovarianceSequence& cov, int n, const GemdParams& params);

}  // namespace gemd
