#include "gemd/faithfulness.hpp"

#include <algorithm>
#include <set>

namespace gemd {

namespace {

std::vector<std::vector<int>> subsets_for_pair(int n, int i, int j, std::uint64_t subset_seed) {
  if (n <= 7) return enumerate_conditioning_sets(n, i, j, -1);
  // Larger systems: the empty set, all singletons, and 200 random sets.
  std::vector<std::vector<int>> sets = enumerate_conditioning_sets(n, i, j, 1);
  GaussianRng rng(derive_seed(subset_seed, static_cast<std::uint64_t>(i) * 1000003ULL + j));
  for (int k = 0; k < 200; ++k) {
    std::vector<int> s;
    for (int v = 1; v <= n; ++v)
      if (v != i && v != j && (rng.raw() & 1U)) s.push_back(v);
    sets.push_back(std::move(s));
  }
  return sets;
}

}  // namespace

FaithfulnessReport check_faithfulness(const LdimModel& m, const MultiArrowGraph& representation,
                                      int lag_depth, double tol, std::uint64_t subset_seed) {
  if (representation.n != m.n)
    throw structure_error("check_faithfulness: representation size mismatch");
  if (!check_recursive(representation))
    throw structure_error("check_faithfulness: representation is not recursive");

  FaithfulnessReport report;
  report.lag_depth = lag_depth;
  report.tolerance = tol;

  const CovarianceSequence cov = population_autocovariance(m, lag_depth);

  for (int i = 1; i <= m.n; ++i) {
    for (int j = 1; j <= m.n; ++j) {
      if (i == j) continue;
      for (const auto& s : subsets_for_pair(m.n, i, j, subset_seed)) {
        {
          const bool conn = feedthrough_d_connected(representation, i, j, s);
          const auto [sep, res] = feedthrough_separated(cov, j, i, s, lag_depth, tol);
          if (conn == sep)
            report.violations.push_back(
                {SeparationKind::Feedthrough, i, j, s, conn, sep, res.fscore});
        }
        {
          const bool conn = delayed_d_connected(representation, i, j, s);
          const auto [sep, res] = delayed_separated(cov, j, i, s, lag_depth, tol);
          if (conn == sep)
            report.violations.push_back({SeparationKind::Delayed, i, j, s, conn, sep, res.fscore});
        }
      }
    }
  }
  return report;
}

FaithfulnessReport check_faithfulness(const LdimModel& m, int lag_depth, double tol) {
  return check_faithfulness(m, perfect_representation(m), lag_depth, tol);
}

LdimModel parameterize_graph(const MultiArrowGraph& g, const ParameterLaw& law, GaussianRng& rng) {
  g.validate();
  LdimModel m(g.n);
  // Draw in a fixed edge order so a seed pins the whole model.
  for (const auto& [u, v] : g.single_headed)
    m.set_dynamics(u, v, TransferFunctionD::gain(rng.uniform(law.lo, law.hi)));
  for (const auto& [u, v] : g.double_headed)
    m.set_dynamics(u, v, TransferFunctionD::delay_gain(rng.uniform(law.lo, law.hi), 1));
  return m;
}

ScanSummary scan_models(const std::function<LdimModel(GaussianRng&)>& generate, int trials,
                        std::uint64_t seed, int lag_depth, double tol) {
  ScanSummary summary;
  summary.trials = trials;
  for (int t = 0; t < trials; ++t) {
    ScanTrial row;
    row.trial = t;
    row.seed = derive_seed(seed, static_cast<std::uint64_t>(t));
    GaussianRng rng(row.seed);
    const LdimModel m = generate(rng);
    try {
      const FaithfulnessReport rep = check_faithfulness(m, lag_depth, tol);
      row.faithful = rep.faithful();
      row.violation_count = static_cast<int>(rep.violations.size());
      (row.faithful ? summary.faithful : summary.unfaithful) += 1;
    } catch (const stability_error&) {
      row.unstable = true;
      summary.unstable += 1;
    }
    summary.rows.push_back(std::move(row));
  }
  return summary;
}

ScanSummary zero_measure_scan(const MultiArrowGraph& g, int trials, const ParameterLaw& law,
                              std::uint64_t seed, int lag_depth, double tol) {
  return scan_models([&](GaussianRng& rng) { return parameterize_graph(g, law, rng); }, trials,
                     seed, lag_depth, tol);
}

}  // namespace gemd
