#include <doctest.h>

#include <cstdio>

#include "gemd/builtins.hpp"
#include "gemd/gemd.hpp"
#include "gemd/serialization.hpp"

using namespace gemd;

namespace {

std::string temp_path(const char* name) { return std::string("serialization_") + name; }

}  // namespace

TEST_CASE("model json round trip") {
  LdimModel m = builtins::six_node_network();
  m.noise_shaping[2] = TransferFunctionD(PolynomialD({1.0, -0.4}), PolynomialD({1.0, 0.25}));
  m.noise_variances(4) = 2.5;
  const auto j = to_json(m);
  const LdimModel back = model_from_json(j);
  CHECK(to_json(back) == j);
  CHECK(back.dynamics.size() == m.dynamics.size());
  CHECK(back.entry(5, 2) != nullptr);
  CHECK(is_strictly_causal(*back.entry(5, 2)));
}

TEST_CASE("graph json round trip") {
  const MultiArrowGraph g = builtins::six_node_graph();
  CHECK(graph_from_json(to_json(g)) == g);

  nlohmann::json j = to_json(g);
  j["e1"].push_back({5, 2});  // collides with the double-headed edge
  CHECK_THROWS_AS(graph_from_json(j), structure_error);
}

TEST_CASE("reconstruction json round trip") {
  GemdParams params;
  params.threshold = 1e-5;
  const auto cov = population_autocovariance(builtins::six_node_network(), params.lag_depth);
  const ReconstructionResult result = ::gemd::gemd(cov, 6, params);
  const auto j = to_json(result);
  const ReconstructionResult back = reconstruction_from_json(j);
  CHECK(to_json(back) == j);
  CHECK(back.graph == result.graph);
  REQUIRE(back.delayed_record(5, 1) != nullptr);
  CHECK(back.delayed_record(5, 1)->separating_set == result.delayed_record(5, 1)->separating_set);
}

TEST_CASE("data csv round trip") {
  const Eigen::MatrixXd data = simulate(builtins::diamond(), 256, 42);
  const std::string path = temp_path("data.csv");
  write_data_csv(path, data);
  const Eigen::MatrixXd back = read_data_csv(path);
  REQUIRE(back.rows() == data.rows());
  REQUIRE(back.cols() == data.cols());
  // 12 significant digits survive the trip at this magnitude
  CHECK((back - data).cwiseAbs().maxCoeff() < 1e-9);
  std::remove(path.c_str());
}

TEST_CASE("json files") {
  const std::string path = temp_path("graph.json");
  save_json(path, to_json(builtins::triangle_graph()));
  CHECK(graph_from_json(load_json(path)) == builtins::triangle_graph());
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_json("does_not_exist.json"), data_error);
}
