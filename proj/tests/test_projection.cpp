#include <doctest.h>

#include "gemd/builtins.hpp"
#include "gemd/ldim.hpp"
#include "gemd/projection.hpp"

using namespace gemd;

namespace {

// E[(y_target - w'x) x_k] for every regressor, straight from the covariances.
double max_orthogonality_defect(const CovarianceSequence& cov, int target,
                                const std::vector<Regressor>& regs, const Eigen::VectorXd& w) {
  double worst = 0.0;
  for (std::size_t a = 0; a < regs.size(); ++a) {
    double moment = cov.cross(target, regs[a].process, regs[a].lag);
    for (std::size_t b = 0; b < regs.size(); ++b)
      moment -= w(static_cast<Eigen::Index>(b)) *
                cov.cross(regs[a].process, regs[b].process, regs[b].lag - regs[a].lag);
    worst = std::max(worst, std::abs(moment));
  }
  return worst;
}

}  // namespace

TEST_CASE("conditioning set enumeration order") {
  const auto sets = enumerate_conditioning_sets(4, 1, 3, -1);
  const std::vector<std::vector<int>> expected{{}, {2}, {4}, {2, 4}};
  CHECK(sets == expected);
  CHECK(enumerate_conditioning_sets(4, 1, 3, 1) == std::vector<std::vector<int>>{{}, {2}, {4}});
  CHECK(enumerate_conditioning_sets(2, 1, 2, -1) == std::vector<std::vector<int>>{{}});
}

TEST_CASE("projection on an independent target") {
  const auto cov = population_autocovariance(LdimModel(3), 10);
  RegressorSpec spec;
  spec.target = 3;
  spec.candidate = 1;
  spec.conditioning = {2};
  FilterResult res = project(cov, spec);
  CHECK(res.coefficients.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(res.residual_variance == doctest::Approx(1.0));
  CHECK(res.fscore < 1e-12);
  CHECK_FALSE(res.ridge_flagged);
}

TEST_CASE("scalar regression recovers the structural gain") {
  LdimModel m(2);
  m.set_dynamics(1, 2, TransferFunctionD::gain(1.0));  // y_2 = y_1 + e_2
  const auto cov = population_autocovariance(m, 10);
  RegressorSpec spec;
  spec.target = 2;
  spec.candidate = 1;
  FilterResult res = project(cov, spec);
  CHECK(res.candidate_lag0_coeff == doctest::Approx(1.0));
  CHECK(res.residual_variance == doctest::Approx(1.0));
  CHECK(res.fscore > 0.3);
}

TEST_CASE("path cancellation zeroes the unconditional coefficient only") {
  const double a = 0.6, b = 0.5;
  const auto cov = population_autocovariance(builtins::triangle(a, b, -a * b), 10);
  RegressorSpec spec;
  spec.target = 3;
  spec.candidate = 1;
  FilterResult marginal = project(cov, spec);
  CHECK(std::abs(marginal.candidate_lag0_coeff) < 1e-12);
  CHECK(marginal.fscore < 1e-12);

  // conditioning on the middle process restores the direct-edge coefficient
  spec.conditioning = {2};
  FilterResult conditioned = project(cov, spec);
  CHECK(conditioned.candidate_lag0_coeff == doctest::Approx(-a * b));
  CHECK(conditioned.fscore > 1e-3);
}

TEST_CASE("feedthrough separation on the six-node network") {
  const auto m = builtins::six_node_network();
  const auto cov = population_autocovariance(m, 10);
  const double tol = 1e-6;

  CHECK(feedthrough_separated(cov, 4, 1, {2}, 10, tol).first);
  CHECK_FALSE(feedthrough_separated(cov, 4, 1, {}, 10, tol).first);

  // a direct feedthrough edge is never separated
  for (const auto& s : enumerate_conditioning_sets(6, 3, 4, -1))
    CHECK_FALSE(feedthrough_separated(cov, 4, 3, s, 10, tol).first);
}

TEST_CASE("delayed separation on the six-node network") {
  const auto m = builtins::six_node_network();
  const auto cov = population_autocovariance(m, 10);
  const double tol = 1e-6;

  // the strictly causal feedback 5 => 2 is never separated
  for (const auto& s : enumerate_conditioning_sets(6, 2, 5, -1))
    CHECK_FALSE(delayed_separated(cov, 2, 5, s, 10, tol).first);

  // fully independent directions separate immediately
  CHECK(delayed_separated(cov, 5, 1, {}, 10, tol).first);
  CHECK(delayed_separated(cov, 5, 1, {4}, 10, tol).first);

  // the past of 5 reaches 3 unless the present of 2 is conditioned
  CHECK_FALSE(delayed_separated(cov, 3, 5, {}, 10, tol).first);
  CHECK(delayed_separated(cov, 3, 5, {2}, 10, tol).first);
}

TEST_CASE("fscore_min_over_sets") {
  const auto independent = population_autocovariance(LdimModel(3), 10);
  const auto [f0, s0] =
      fscore_min_over_sets(independent, 2, 1, CandidateMode::Contemporaneous, {{}}, 10);
  CHECK(f0 < 1e-12);
  CHECK(s0.empty());

  const double a = 0.6, b = 0.5;
  const auto cancelled = population_autocovariance(builtins::triangle(a, b, -a * b), 10);
  const auto [f1, s1] =
      fscore_min_over_sets(cancelled, 3, 1, CandidateMode::Contemporaneous, {{}, {2}}, 10);
  CHECK(f1 < 1e-12);
  CHECK(s1.empty());  // the minimum sits at the empty set, not at {2}

  const auto six = population_autocovariance(builtins::six_node_network(), 10);
  const auto [f2, s2] = fscore_min_over_sets(
      six, 4, 3, CandidateMode::Contemporaneous, enumerate_conditioning_sets(6, 3, 4, -1), 10);
  CHECK(f2 > 1e-3);  // direct edge: bounded away from zero for every set
}

TEST_CASE("normal-equation orthogonality at population level") {
  const auto m = builtins::six_node_network();
  const auto cov = population_autocovariance(m, 10);
  for (int target : {2, 4, 5}) {
    RegressorSpec spec;
    spec.target = target;
    spec.candidate = target == 2 ? 1 : 2;
    spec.conditioning = target == 5 ? std::vector<int>{4} : std::vector<int>{};
    const FilterResult res = project(cov, spec);
    CHECK(max_orthogonality_defect(cov, target, res.regressors, res.coefficients) < 1e-8);
  }
}

TEST_CASE("variance reduction is monotone in the regressor block") {
  const auto cov = population_autocovariance(builtins::six_node_network(), 10);
  std::vector<Regressor> regs;
  double previous = cov.cross(5, 5, 0);
  for (const Regressor r : {Regressor{4, 0}, Regressor{2, 0}, Regressor{4, 1}, Regressor{1, 0},
                            Regressor{3, 2}, Regressor{6, 0}, Regressor{5, 1}}) {
    regs.push_back(r);
    const auto sol = solve_projection(cov, 5, regs);
    CHECK(sol.residual_variance <= previous + 1e-12);
    previous = sol.residual_variance;
  }
}

TEST_CASE("two-sided window dominates the causal window") {
  const auto cov = population_autocovariance(builtins::six_node_network(), 10);
  for (int target = 1; target <= 6; ++target) {
    std::vector<Regressor> causal, two_sided;
    for (int p = 1; p <= 6; ++p)
      for (int lag = -5; lag <= 5; ++lag) {
        if (p == target && lag == 0) continue;
        if (lag >= 0) causal.push_back({p, lag});
        two_sided.push_back({p, lag});
      }
    const double rv_causal = solve_projection(cov, target, causal).residual_variance;
    const double rv_two_sided = solve_projection(cov, target, two_sided).residual_variance;
    CHECK(rv_two_sided <= rv_causal + 1e-10);
  }
}

TEST_CASE("lag-0 coefficients on an all-gain model match the static regression") {
  const double a = 0.6, b = 0.5, c = 0.2;
  const auto m = builtins::triangle(a, b, c);
  const auto cov = population_autocovariance(m, 10);

  RegressorSpec spec;
  spec.target = 3;
  spec.candidate = 1;
  spec.conditioning = {2};
  const FilterResult res = project(cov, spec);

  // static regression of y_3 on (y_1, y_2) from the lag-0 covariance alone
  Eigen::Matrix2d sxx;
  sxx << cov.cross(1, 1, 0), cov.cross(1, 2, 0), cov.cross(2, 1, 0), cov.cross(2, 2, 0);
  Eigen::Vector2d sxy(cov.cross(3, 1, 0), cov.cross(3, 2, 0));
  const Eigen::Vector2d beta = sxx.ldlt().solve(sxy);
  CHECK(res.coefficients(0) == doctest::Approx(beta(0)).epsilon(1e-9));
  CHECK(res.coefficients(1) == doctest::Approx(beta(1)).epsilon(1e-9));
  CHECK(res.candidate_lag0_coeff == doctest::Approx(c).epsilon(1e-9));
}

TEST_CASE("empirical filter coefficients approach the population filter") {
  const auto m = builtins::six_node_network();
  const auto pop = population_autocovariance(m, 10);
  RegressorSpec spec;
  spec.target = 4;
  spec.candidate = 3;
  spec.conditioning = {2};
  const FilterResult reference = project(pop, spec);
  for (const int T : {2000, 50000}) {
    const auto est = empirical_autocovariance(simulate(m, T, 1234), 10);
    const FilterResult fitted = project(est, spec);
    const double err = (fitted.coefficients - reference.coefficients).cwiseAbs().maxCoeff();
    CHECK(err < 5.0 / std::sqrt(static_cast<double>(T)));
  }
}

TEST_CASE("spec validation") {
  const auto cov = population_autocovariance(LdimModel(3), 10);
  RegressorSpec bad;
  bad.target = 1;
  bad.candidate = 1;
  CHECK_THROWS_AS(project(cov, bad), structure_error);
  bad.candidate = 2;
  bad.conditioning = {2};
  CHECK_THROWS_AS(project(cov, bad), structure_error);

  RegressorSpec deep;
  deep.target = 1;
  deep.candidate = 2;
  deep.lag_depth = 20;  // deeper than the source provides
  CHECK_THROWS_AS(project(cov, deep), data_error);
}
