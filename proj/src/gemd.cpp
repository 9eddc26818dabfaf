#include "gemd/gemd.hpp"

#include <algorithm>
#include <limits>

namespace gemd {

double SeparationRecord::min_fscore() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [set, f] : fscores) best = std::min(best, f);
  return best;
}

const SeparationRecord* ReconstructionResult::feedthrough_record(int a, int b) const {
  const int lo = std::min(a, b), hi = std::max(a, b);
  for (const auto& r : records)
    if (r.kind == SeparationKind::Feedthrough && r.i == lo && r.j == hi) return &r;
  return nullptr;
}

const SeparationRecord* ReconstructionResult::delayed_record(int candidate, int target) const {
  for (const auto& r : records)
    if (r.kind == SeparationKind::Delayed && r.i == candidate && r.j == target) return &r;
  return nullptr;
}

namespace {

// Search the conditioning sets in order; stop at the first separating one.
SeparationRecord search(const CovarianceSequence& cov, int candidate, int target,
                        SeparationKind kind, const std::vector<std::vector<int>>& sets,
                        const GemdParams& params) {
  SeparationRecord rec;
  rec.i = kind == SeparationKind::Feedthrough ? std::min(candidate, target) : candidate;
  rec.j = kind == SeparationKind::Feedthrough ? std::max(candidate, target) : target;
  rec.kind = kind;
  for (const auto& s : sets) {
    const auto [sep, res] =
        kind == SeparationKind::Feedthrough
            ? feedthrough_separated(cov, target, candidate, s, params.lag_depth, params.threshold)
            : delayed_separated(cov, target, candidate, s, params.lag_depth, params.threshold);
    rec.fscores.emplace_back(s, res.fscore);
    if (sep) {
      rec.separating_set = s;
      break;
    }
  }
  return rec;
}

}  // namespace

ReconstructionResult gemd(const CovarianceSequence& cov, int n, const GemdParams& params) {
  if (n != cov.process_count()) throw data_error("gemd: process count mismatch");
  if (cov.max_lag() < params.lag_depth)
    throw data_error("gemd: covariance source does not cover the requested lag depth");

  ReconstructionResult out;
  out.n = n;
  out.params = params;
  out.graph = PartialGraph(n);

  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const auto sets = enumerate_conditioning_sets(n, i, j, params.max_cond_size);

      // Step 1: feedthrough separation, target is the higher-indexed process.
      SeparationRecord step1 = search(cov, i, j, SeparationKind::Feedthrough, sets, params);
      const bool found = step1.separating_set.has_value();
      out.records.push_back(std::move(step1));
      if (!found) {
        out.graph.undirected.insert({i, j});
        continue;
      }

      // Step 2a: can the past of y_i be separated from y_j?
      SeparationRecord step2a = search(cov, i, j, SeparationKind::Delayed, sets, params);
      if (!step2a.separating_set) out.graph.double_headed.insert({i, j});
      out.records.push_back(std::move(step2a));

      // Step 2b: symmetric, the past of y_j against y_i.
      SeparationRecord step2b = search(cov, j, i, SeparationKind::Delayed, sets, params);
      if (!step2b.separating_set) out.graph.double_headed.insert({j, i});
      out.records.push_back(std::move(step2b));
    }
  }
  out.graph.validate();
  return out;
}

ReconstructionResult gemd_from_data(const Eigen::MatrixXd& data, const GemdParams& params) {
  const CovarianceSequence cov = empirical_autocovariance(data, params.lag_depth);
  return gemd(cov, static_cast<int>(data.rows()), params);
}

ScoreTable pairwise_scores(const CovarianceSequence& cov, int n, const GemdParams& params) {
  if (n != cov.process_count()) throw data_error("pairwise_scores: process count mismatch");
  ScoreTable table;
  table.n = n;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const auto sets = enumerate_conditioning_sets(n, i, j, params.max_cond_size);
      {
        auto [f, s] =
            fscore_min_over_sets(cov, j, i, CandidateMode::Contemporaneous, sets, params.lag_depth);
        table.feedthrough[{i, j}] = {f, std::move(s)};
      }
      {
        auto [f, s] =
            fscore_min_over_sets(cov, j, i, CandidateMode::DelayedOnly, sets, params.lag_depth);
        table.delayed[{i, j}] = {f, std::move(s)};
      }
      {
        auto [f, s] =
            fscore_min_over_sets(cov, i, j, CandidateMode::DelayedOnly, sets, params.lag_depth);
        table.delayed[{j, i}] = {f, std::move(s)};
      }
    }
  }
  return table;
}

}  // namespace gemd
