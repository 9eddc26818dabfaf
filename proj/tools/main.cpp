#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "gemd/experiments.hpp"
#include "gemd/serialization.hpp"

namespace {

using namespace gemd;

struct CommonOpts {
  std::string model = "six_node_network";
  int lags = 10;
  std::uint64_t seed = 1;
};

int run(int argc, char** argv) {
  CLI::App app{"Network reconstruction for linear dynamic influence models"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "simulate a model and write the sample path as CSV");
  std::string sim_model = "six_node_network", sim_out = "data.csv";
  int sim_horizon = 10000;
  std::uint64_t sim_seed = 1;
  sim->add_option("--model", sim_model, "builtin name or model JSON path");
  sim->add_option("--horizon", sim_horizon, "number of samples")->check(CLI::PositiveNumber);
  sim->add_option("--seed", sim_seed, "rng seed");
  sim->add_option("--out", sim_out, "output CSV path");

  // reconstruct
  auto* rec = app.add_subcommand("reconstruct", "run the separating-set search on data or a model");
  std::string rec_data, rec_model, rec_out = "graph.json";
  double rec_threshold = 1e-6;
  int rec_lags = 10, rec_maxcond = -1;
  bool rec_population = false;
  rec->add_option("--data", rec_data, "CSV sample path (one row per time step)");
  rec->add_option("--model", rec_model, "model (used with --population, or echoed for reference)");
  rec->add_option("--threshold", rec_threshold, "edge threshold on f-scores");
  rec->add_option("--lags", rec_lags, "lag depth of the projections")->check(CLI::PositiveNumber);
  rec->add_option("--max-cond", rec_maxcond, "max conditioning-set size (-1: exhaustive)");
  rec->add_flag("--population", rec_population, "use exact covariances of --model instead of data");
  rec->add_option("--out", rec_out, "output JSON path");

  // orient
  auto* ori = app.add_subcommand("orient", "apply collider detection and propagation rules");
  std::string ori_in, ori_out = "oriented.json", ori_log;
  ori->add_option("--in", ori_in, "reconstruction JSON")->required();
  ori->add_option("--out", ori_out, "output JSON path");
  ori->add_option("--log", ori_log, "write the rule firing log to this file");

  // roc
  auto* roc = app.add_subcommand("roc", "score-sweep ROC study over simulated trials");
  ExperimentConfig roc_cfg;
  std::string roc_out = "roc.csv";
  roc->add_option("--model", roc_cfg.model, "builtin name or model JSON path");
  roc->add_option("--trials", roc_cfg.trials)->check(CLI::PositiveNumber);
  roc->add_option("--horizons", roc_cfg.horizons, "sample counts")->delimiter(',');
  roc->add_option("--lags", roc_cfg.lag_depth)->check(CLI::PositiveNumber);
  roc->add_option("--seed", roc_cfg.seed);
  roc->add_option("--law", [&roc_cfg](const std::vector<std::string>& v) {
    if (v.size() != 2) return false;
    roc_cfg.law_lo = std::stod(v[0]);
    roc_cfg.law_hi = std::stod(v[1]);
    return true;
  }, "parameter law bounds lo hi")->expected(2);
  roc->add_option("--out", roc_out, "output CSV path");

  // accuracy
  auto* acc = app.add_subcommand("accuracy", "orientation accuracy at the ROC-knee threshold");
  ExperimentConfig acc_cfg;
  std::string acc_out = "accuracy.csv";
  bool acc_population = false;
  acc->add_option("--model", acc_cfg.model);
  acc->add_option("--trials", acc_cfg.trials)->check(CLI::PositiveNumber);
  acc->add_option("--horizons", acc_cfg.horizons)->delimiter(',');
  acc->add_option("--lags", acc_cfg.lag_depth)->check(CLI::PositiveNumber);
  acc->add_option("--seed", acc_cfg.seed);
  acc->add_flag("--population", acc_population, "use exact covariances instead of samples");
  acc->add_option("--out", acc_out, "output CSV path");

  // counterexample
  auto* cex = app.add_subcommand("counterexample",
                                 "verify the spectra of the cancelled triangle and its twin agree");
  int cex_draws = 20, cex_grid = 256;
  std::uint64_t cex_seed = 1;
  cex->add_option("--draws", cex_draws)->check(CLI::PositiveNumber);
  cex->add_option("--grid", cex_grid)->check(CLI::PositiveNumber);
  cex->add_option("--seed", cex_seed);

  // faithfulness
  auto* fai = app.add_subcommand("faithfulness", "zero-measure scan over random parameterizations");
  ExperimentConfig fai_cfg;
  fai_cfg.trials = 200;
  std::string fai_out, fai_csv;
  bool fai_constrained = false;
  fai->add_option("--graph", fai_cfg.model, "builtin graph name or graph/model JSON path");
  fai->add_option("--trials", fai_cfg.trials)->check(CLI::PositiveNumber);
  fai->add_option("--lags", fai_cfg.lag_depth)->check(CLI::PositiveNumber);
  fai->add_option("--seed", fai_cfg.seed);
  fai->add_flag("--constrained-triangle", fai_constrained,
                "scan triangles restricted to the cancelling surface c = -a*b");
  fai->add_option("--out", fai_out, "summary JSON path");
  fai->add_option("--csv", fai_csv, "per-trial CSV path");

  CLI11_PARSE(app, argc, argv);

  if (sim->parsed()) {
    const LdimModel model = resolve_model(sim_model);
    write_data_csv(sim_out, simulate(model, sim_horizon, sim_seed));
    std::printf("wrote %d samples of %d processes to %s\n", sim_horizon, model.n, sim_out.c_str());
    return 0;
  }

  if (rec->parsed()) {
    GemdParams params;
    params.threshold = rec_threshold;
    params.lag_depth = rec_lags;
    params.max_cond_size = rec_maxcond;
    ReconstructionResult result;
    if (rec_population) {
      if (rec_model.empty()) throw data_error("--population requires --model");
      const LdimModel model = resolve_model(rec_model);
      result = ::gemd::gemd(population_autocovariance(model, params.lag_depth), model.n, params);
    } else {
      if (rec_data.empty()) throw data_error("either --data or --population is required");
      result = gemd_from_data(read_data_csv(rec_data), params);
    }
    save_json(rec_out, to_json(result));
    std::printf("reconstruction: %zu undirected, %zu double-headed -> %s\n",
                result.graph.undirected.size(), result.graph.double_headed.size(), rec_out.c_str());
    return 0;
  }

  if (ori->parsed()) {
    const ReconstructionResult result = reconstruction_from_json(load_json(ori_in));
    const auto [graph, trace] = orient_all(result);
    nlohmann::json out{{"graph", to_json(graph)}, {"trace", to_json(trace)}};
    save_json(ori_out, out);
    if (!ori_log.empty()) {
      std::ofstream log(ori_log);
      if (!log) throw data_error("cannot open for writing: " + ori_log);
      log << trace.rule_log();
    }
    std::printf("%zu rule firings (%zu conflicts) -> %s\n", trace.events.size(),
                trace.conflicts.size(), ori_out.c_str());
    return 0;
  }

  if (roc->parsed()) {
    const auto curves = run_roc(roc_cfg);
    write_roc_csv(roc_out, curves);
    for (const auto& c : curves) std::printf("horizon %d: AUC %.4f\n", c.horizon, c.auc);
    return 0;
  }

  if (acc->parsed()) {
    if (acc_population) {
      const AccuracyRow row = population_orientation_accuracy(acc_cfg);
      std::printf("population: accuracy %.4f over %d oriented edges\n", row.accuracy,
                  row.edges_oriented);
      write_accuracy_csv(acc_out, {row});
      return 0;
    }
    const auto rows = run_orientation_accuracy(acc_cfg);
    write_accuracy_csv(acc_out, rows);
    for (const auto& r : rows)
      std::printf("horizon %d: accuracy %.4f (theta %.3g, %d edges)\n", r.horizon, r.accuracy,
                  r.knee_threshold, r.edges_oriented);
    return 0;
  }

  if (cex->parsed()) {
    const CounterexampleReport report = verify_counterexample(cex_grid, cex_draws, cex_seed);
    std::printf("max |Phi_1 - Phi_2| = %.3g, max closed-form deviation = %.3g\n",
                report.max_psd_deviation, report.max_closed_form_deviation);
    std::printf("%s\n", report.pass ? "PASS" : "FAIL");
    return report.pass ? 0 : 1;
  }

  if (fai->parsed()) {
    const ScanSummary summary = run_faithfulness_scan(fai_cfg, fai_constrained);
    std::printf("trials %d: faithful %d, unfaithful %d, unstable %d\n", summary.trials,
                summary.faithful, summary.unfaithful, summary.unstable);
    if (!fai_out.empty()) save_json(fai_out, to_json(summary));
    if (!fai_csv.empty()) write_scan_csv(fai_csv, summary);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
