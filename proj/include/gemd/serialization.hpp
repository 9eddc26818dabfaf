#pragma once

#include <json.hpp>

#include <string>

#include "gemd/faithfulness.hpp"
#include "gemd/gemd.hpp"
#include "gemd/ldim.hpp"
#include "gemd/orientation.hpp"

namespace gemd {

// Vertex indices are 1-based in every serialized form.

nlohmann::json to_json(const TransferFunctionD& tf);
TransferFunctionD tf_from_json(const nlohmann::json& j);

nlohmann::json to_json(const LdimModel& m);
LdimModel model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MultiArrowGraph& g);
MultiArrowGraph graph_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PartialGraph& g);
PartialGraph partial_graph_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ReconstructionResult& r);
ReconstructionResult reconstruction_from_json(const nlohmann::json& j);

nlohmann::json to_json(const OrientationTrace& t);
nlohmann::json to_json(const FaithfulnessReport& r);
nlohmann::json to_json(const ScanSummary& s);

void save_json(const std::string& path, const nlohmann::json& j);
nlohmann::json load_json(const std::string& path);

/// One row per time step, header y_1..y_n, 12 significant digits.
void write_data_csv(const std::string& path, const Eigen::MatrixXd& data);
Eigen::MatrixXd read_data_csv(const std::string& path);

}  // namespace gemd
