#include "gemd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "gemd/serialization.hpp"

namespace gemd {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct ScoredStatement {
  double score = 0.0;
  bool positive = false;
};

double rank_auc(const std::vector<ScoredStatement>& scored) {
  std::vector<std::size_t> order(scored.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scored[a].score < scored[b].score; });
  double rank_sum_pos = 0.0;
  std::size_t npos = 0, nneg = 0;
  std::size_t k = 0;
  while (k < order.size()) {
    std::size_t m = k;
    while (m + 1 < order.size() && scored[order[m + 1]].score == scored[order[k]].score) ++m;
    const double avg_rank = 0.5 * (static_cast<double>(k + 1) + static_cast<double>(m + 1));
    for (std::size_t t = k; t <= m; ++t)
      if (scored[order[t]].positive) rank_sum_pos += avg_rank;
    k = m + 1;
  }
  for (const auto& s : scored) (s.positive ? npos : nneg) += 1;
  if (npos == 0 || nneg == 0) return 1.0;
  return (rank_sum_pos - 0.5 * static_cast<double>(npos) * static_cast<double>(npos + 1)) /
         (static_cast<double>(npos) * static_cast<double>(nneg));
}

RocPoint sweep_point(const std::vector<ScoredStatement>& scored, double threshold) {
  std::size_t tp = 0, fp = 0, pos = 0, neg = 0;
  for (const auto& s : scored) {
    if (s.positive) {
      ++pos;
      if (s.score > threshold) ++tp;
    } else {
      ++neg;
      if (s.score > threshold) ++fp;
    }
  }
  RocPoint p;
  p.threshold = threshold;
  p.tpr = pos ? static_cast<double>(tp) / static_cast<double>(pos) : 0.0;
  p.fpr = neg ? static_cast<double>(fp) / static_cast<double>(neg) : 0.0;
  return p;
}

struct Trial {
  LdimModel model;
  CovarianceSequence cov;
  TruthLabels labels;
};

// One horizon's worth of simulated trials, with parameters redrawn per trial
// when the model source is the six-node builtin.
std::vector<Trial> make_trials(const ExperimentConfig& config, int horizon, int horizon_index) {
  std::vector<Trial> trials;
  trials.reserve(static_cast<std::size_t>(config.trials));
  const bool redraw = config.model == "six_node_network";
  const LdimModel fixed = redraw ? LdimModel(1) : resolve_model(config.model);
  const std::uint64_t horizon_seed = derive_seed(config.seed, static_cast<std::uint64_t>(horizon_index));
  for (int t = 0; t < config.trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(horizon_seed, static_cast<std::uint64_t>(t));
    Trial trial;
    if (redraw) {
      GaussianRng prng(derive_seed(trial_seed, 1));
      trial.model = builtins::six_node_network(
          builtins::draw_six_node_params(prng, config.law_lo, config.law_hi));
    } else {
      trial.model = fixed;
    }
    const Eigen::MatrixXd data = simulate(trial.model, horizon, derive_seed(trial_seed, 2));
    trial.cov = empirical_autocovariance(data, config.lag_depth);
    trial.labels = truth_labels(trial.model);
    trials.push_back(std::move(trial));
  }
  return trials;
}

std::vector<ScoredStatement> score_trials(const std::vector<Trial>& trials,
                                          const ExperimentConfig& config) {
  std::vector<ScoredStatement> scored;
  GemdParams params;
  params.lag_depth = config.lag_depth;
  params.max_cond_size = config.max_cond_size;
  for (const auto& trial : trials) {
    const int n = trial.cov.process_count();
    const ScoreTable table = pairwise_scores(trial.cov, n, params);
    for (const auto& [pair, score] : table.feedthrough)
      scored.push_back({score.fscore, trial.labels.feedthrough_pairs.count(pair) != 0});
    for (const auto& [pair, score] : table.delayed)
      scored.push_back({score.fscore, trial.labels.delayed_pairs.count(pair) != 0});
  }
  return scored;
}

double knee_threshold(const std::vector<ScoredStatement>& scored,
                      const std::vector<double>& thresholds) {
  double best_gap = -1.0;
  double best = thresholds.empty() ? 0.0 : thresholds.front();
  for (double th : thresholds) {
    const RocPoint p = sweep_point(scored, th);
    const double gap = p.tpr - p.fpr;
    if (gap > best_gap || (gap == best_gap && th > best)) {
      best_gap = gap;
      best = th;
    }
  }
  return best;
}

struct OrientationTally {
  int correct = 0;
  int oriented = 0;
  int conflicts = 0;
};

void tally_orientations(const LdimModel& model, const ReconstructionResult& rec,
                        OrientationTally& tally) {
  const auto [oriented, trace] = orient_all(rec);
  const MultiArrowGraph truth = perfect_representation(model);
  for (const auto& edge : oriented.directed) {
    tally.oriented += 1;
    if (truth.single_headed.count(edge)) tally.correct += 1;
  }
  tally.conflicts += static_cast<int>(trace.conflicts.size());
}

}  // namespace

std::vector<double> default_threshold_sweep() {
  std::vector<double> grid{0.0};
  constexpr int kSteps = 120;
  for (int k = 0; k <= kSteps; ++k)
    grid.push_back(std::pow(10.0, -6.0 + 6.0 * static_cast<double>(k) / kSteps));
  return grid;
}

TruthLabels truth_labels(const LdimModel& m) {
  TruthLabels labels;
  const MultiArrowGraph rep = perfect_representation(m);
  for (const auto& [u, v] : rep.single_headed)
    labels.feedthrough_pairs.insert({std::min(u, v), std::max(u, v)});
  for (const auto& [key, tf] : m.dynamics) {
    if (key.first == key.second) continue;
    if (has_strictly_causal_part(tf)) labels.delayed_pairs.insert(key);
  }
  return labels;
}

std::vector<RocCurve> run_roc(const ExperimentConfig& config) {
  const std::vector<double> thresholds =
      config.edge_thresholds.empty() ? default_threshold_sweep() : config.edge_thresholds;
  std::vector<RocCurve> curves;
  for (std::size_t h = 0; h < config.horizons.size(); ++h) {
    const int horizon = config.horizons[h];
    const auto trials = make_trials(config, horizon, static_cast<int>(h));
    const auto scored = score_trials(trials, config);
    RocCurve curve;
    curve.horizon = horizon;
    curve.auc = rank_auc(scored);
    for (double th : thresholds) curve.points.push_back(sweep_point(scored, th));
    curves.push_back(std::move(curve));
  }
  return curves;
}

std::vector<AccuracyRow> run_orientation_accuracy(const ExperimentConfig& config) {
  const std::vector<double> thresholds =
      config.edge_thresholds.empty() ? default_threshold_sweep() : config.edge_thresholds;
  std::vector<AccuracyRow> rows;
  for (std::size_t h = 0; h < config.horizons.size(); ++h) {
    const int horizon = config.horizons[h];
    const auto trials = make_trials(config, horizon, static_cast<int>(h));
    const auto scored = score_trials(trials, config);

    AccuracyRow row;
    row.horizon = horizon;
    row.trials = config.trials;
    row.knee_threshold = knee_threshold(scored, thresholds);

    GemdParams params;
    params.threshold = row.knee_threshold;
    params.lag_depth = config.lag_depth;
    params.max_cond_size = config.max_cond_size;

    OrientationTally tally;
    for (const auto& trial : trials)
      tally_orientations(trial.model, gemd(trial.cov, trial.cov.process_count(), params), tally);
    row.edges_oriented = tally.oriented;
    row.conflicts = tally.conflicts;
    row.accuracy = tally.oriented ? static_cast<double>(tally.correct) / tally.oriented : 0.0;
    rows.push_back(row);
  }
  return rows;
}

AccuracyRow population_orientation_accuracy(const ExperimentConfig& config) {
  GemdParams params;
  params.lag_depth = config.lag_depth;
  params.max_cond_size = config.max_cond_size;

  OrientationTally tally;
  const bool redraw = config.model == "six_node_network";
  for (int t = 0; t < config.trials; ++t) {
    LdimModel model;
    if (redraw) {
      GaussianRng prng(derive_seed(config.seed, static_cast<std::uint64_t>(t)));
      model = builtins::six_node_network(
          builtins::draw_six_node_params(prng, config.law_lo, config.law_hi));
    } else {
      model = resolve_model(config.model);
    }
    const CovarianceSequence cov = population_autocovariance(model, config.lag_depth);
    tally_orientations(model, gemd(cov, model.n, params), tally);
  }
  AccuracyRow row;
  row.horizon = 0;
  row.trials = config.trials;
  row.knee_threshold = params.threshold;
  row.edges_oriented = tally.oriented;
  row.conflicts = tally.conflicts;
  row.accuracy = tally.oriented ? static_cast<double>(tally.correct) / tally.oriented : 0.0;
  return row;
}

CounterexampleReport verify_counterexample(int grid, int draws, std::uint64_t seed) {
  CounterexampleReport report;
  report.draws = draws;
  report.grid = grid;
  GaussianRng rng(seed);
  for (int d = 0; d < draws; ++d) {
    const double a = rng.uniform(0.3, 0.9);
    const double b = rng.uniform(0.3, 0.9);
    const LdimModel g1 = builtins::triangle(a, b, -a * b);
    const LdimModel g2 = builtins::triangle_confounder(a, b);
    Eigen::Matrix3d closed;
    closed << 1.0, a, 0.0, a, a * a + 1.0, b, 0.0, b, b * b + 1.0;
    for (int k = 0; k < grid; ++k) {
      const double omega = -kPi + 2.0 * kPi * static_cast<double>(k) / grid;
      const Eigen::MatrixXcd p1 = psd(g1, omega);
      const Eigen::MatrixXcd p2 = psd(g2, omega);
      report.max_psd_deviation =
          std::max(report.max_psd_deviation, (p1 - p2).cwiseAbs().maxCoeff());
      report.max_closed_form_deviation = std::max(
          report.max_closed_form_deviation, (p1 - closed.cast<std::complex<double>>()).cwiseAbs().maxCoeff());
    }
  }
  report.pass = report.max_psd_deviation < 1e-10 && report.max_closed_form_deviation < 1e-12;
  return report;
}

ScanSummary run_faithfulness_scan(const ExperimentConfig& config, bool constrained_triangle) {
  if (constrained_triangle) {
    return scan_models(
        [&](GaussianRng& rng) {
          const double a = rng.uniform(config.law_lo, config.law_hi);
          const double b = rng.uniform(config.law_lo, config.law_hi);
          return builtins::triangle(a, b, -a * b);
        },
        config.trials, config.seed, config.lag_depth);
  }
  const MultiArrowGraph g = resolve_graph(config.model);
  return zero_measure_scan(g, config.trials, {config.law_lo, config.law_hi}, config.seed,
                           config.lag_depth);
}

LdimModel resolve_model(const std::string& name_or_path) {
  if (name_or_path == "six_node_network") return builtins::six_node_network();
  if (name_or_path == "diamond") return builtins::diamond();
  if (name_or_path == "triangle") return builtins::triangle(0.5, 0.5, 0.3);
  if (name_or_path == "cancelled_triangle") return builtins::triangle(0.5, 0.5, -0.25);
  return model_from_json(load_json(name_or_path));
}

MultiArrowGraph resolve_graph(const std::string& name_or_path) {
  if (name_or_path == "six_node_network") return builtins::six_node_graph();
  if (name_or_path == "triangle") return builtins::triangle_graph();
  const nlohmann::json j = load_json(name_or_path);
  if (j.contains("e1")) return graph_from_json(j);
  return perfect_representation(model_from_json(j));
}

void write_roc_csv(const std::string& path, const std::vector<RocCurve>& curves) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw data_error("cannot open for writing: " + path);
  std::fprintf(f, "horizon,threshold,tpr,fpr\n");
  for (const auto& c : curves)
    for (const auto& p : c.points)
      std::fprintf(f, "%d,%.12g,%.12g,%.12g\n", c.horizon, p.threshold, p.tpr, p.fpr);
  std::fclose(f);
}

void write_accuracy_csv(const std::string& path, const std::vector<AccuracyRow>& rows) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw data_error("cannot open for writing: " + path);
  std::fprintf(f, "horizon,accuracy,trials\n");
  for (const auto& r : rows) std::fprintf(f, "%d,%.12g,%d\n", r.horizon, r.accuracy, r.trials);
  std::fclose(f);
}

void write_scan_csv(const std::string& path, const ScanSummary& summary) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw data_error("cannot open for writing: " + path);
  std::fprintf(f, "trial,seed,faithful,violations\n");
  for (const auto& row : summary.rows) {
    const char* status = row.unstable ? "unstable" : (row.faithful ? "true" : "false");
    std::fprintf(f, "%d,%llu,%s,%d\n", row.trial, static_cast<unsigned long long>(row.seed), status,
                 row.violation_count);
  }
  std::fclose(f);
}

}  // namespace gemd
