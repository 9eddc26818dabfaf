#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "gemd/builtins.hpp"
#include "gemd/faithfulness.hpp"
#include "gemd/gemd.hpp"
#include "gemd/orientation.hpp"

namespace gemd {

struct ExperimentConfig {
  std::string model = "six_node_network";  // builtin name or path to a model JSON
  double law_lo = 0.3;                     // parameter law for per-trial draws
  double law_hi = 0.6;
  int trials = 100;
  std::vector<int> horizons = {500, 1000, 10000, 20000, 25000};
  int lag_depth = 10;
  std::vector<double> edge_thresholds;  // empty: default sweep {0} + log grid
  int max_cond_size = -1;
  std::uint64_t seed = 1;
};

std::vector<double> default_threshold_sweep();

/// Ground truth for scoring a reconstruction: unordered feedthrough pairs
/// (the instantaneous skeleton) and ordered strictly-causal influences (every
/// entry with a nonzero coefficient past lag 0, double-headed or mixed).
struct TruthLabels {
  std::set<std::pair<int, int>> feedthrough_pairs;  // i < j
  std::set<std::pair<int, int>> delayed_pairs;      // (driver, target)
};

TruthLabels truth_labels(const LdimModel& m);

struct RocPoint {
  double threshold = 0.0;
  double tpr = 0.0;
  double fpr = 0.0;
};

struct RocCurve {
  int horizon = 0;
  double auc = 0.0;
  std::vector<RocPoint> points;
};

/// Per horizon: simulate each trial with freshly drawn parameters, score every
/// pair with the minimum f-score over conditioning sets, pool the scores
/// against the truth labels, and sweep the threshold grid.
std::vector<RocCurve> run_roc(const ExperimentConfig& config);

struct AccuracyRow {
  int horizon = 0;
  double accuracy = 0.0;
  int trials = 0;
  int edges_oriented = 0;
  int conflicts = 0;
  double knee_threshold = 0.0;
};

/// Per horizon: pick the threshold maximizing tpr - fpr on the pooled scores,
/// reconstruct and orient each trial at that threshold, and compare every
/// oriented edge against the true feedthrough direction. Accuracy pools the
/// comparisons across trials.
std::vector<AccuracyRow> run_orientation_accuracy(const ExperimentConfig& config);

/// Same comparison on exact population covariances (one row, no horizon).
AccuracyRow population_orientation_accuracy(const ExperimentConfig& config);

struct CounterexampleReport {
  int draws = 0;
  int grid = 0;
  double max_psd_deviation = 0.0;          // between the two models, over all draws
  double max_closed_form_deviation = 0.0;  // first model against the closed form
  bool pass = false;
};

/// Spectra of the cancelled triangle and its confounded twin agree on the
/// whole frequency grid; the common spectrum matches the closed form.
CounterexampleReport verify_counterexample(int grid, int draws, std::uint64_t seed);

/// Faithfulness scan over random parameterizations of a graph, or over
/// triangles constrained to the cancelling surface c = -a*b.
ScanSummary run_faithfulness_scan(const ExperimentConfig& config, bool constrained_triangle);

LdimModel resolve_model(const std::string& name_or_path);
MultiArrowGraph resolve_graph(const std::string& name_or_path);

void write_roc_csv(const std::string& path, const std::vector<RocCurve>& curves);
void write_accuracy_csv(const std::string& path, const std::vector<AccuracyRow>& rows);
void write_scan_csv(const std::string& path, const ScanSummary& summary);

}  // namespace gemd
