#include "gemd/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace gemd {

using nlohmann::json;

namespace {

json pairs_to_json(const std::set<std::pair<int, int>>& pairs) {
  json arr = json::array();
  for (const auto& [u, v] : pairs) arr.push_back(json::array({u, v}));
  return arr;
}

std::set<std::pair<int, int>> pairs_from_json(const json& arr) {
  std::set<std::pair<int, int>> out;
  for (const auto& e : arr) out.insert({e.at(0).get<int>(), e.at(1).get<int>()});
  return out;
}

const char* kind_name(SeparationKind k) {
  return k == SeparationKind::Feedthrough ? "feedthrough" : "delayed";
}

SeparationKind kind_from_name(const std::string& s) {
  if (s == "feedthrough") return SeparationKind::Feedthrough;
  if (s == "delayed") return SeparationKind::Delayed;
  throw data_error("unknown separation kind: " + s);
}

}  // namespace

json to_json(const TransferFunctionD& tf) {
  return json{{"num", tf.num.coeffs()}, {"den", tf.den.coeffs()}};
}

TransferFunctionD tf_from_json(const json& j) {
  return TransferFunctionD(PolynomialD(j.at("num").get<std::vector<double>>()),
                           PolynomialD(j.at("den").get<std::vector<double>>()));
}

json to_json(const LdimModel& m) {
  json h = json::array();
  for (const auto& [key, tf] : m.dynamics) {
    json e = to_json(tf);
    e["from"] = key.first;
    e["to"] = key.second;
    h.push_back(std::move(e));
  }
  json f = json::array();
  for (const auto& tf : m.noise_shaping) f.push_back(to_json(tf));
  std::vector<double> sigma(m.noise_variances.data(), m.noise_variances.data() + m.noise_variances.size());
  return json{{"n", m.n}, {"H", std::move(h)}, {"F", std::move(f)}, {"sigma_u", std::move(sigma)}};
}

LdimModel model_from_json(const json& j) {
  LdimModel m(j.at("n").get<int>());
  for (const auto& e : j.at("H"))
    m.set_dynamics(e.at("from").get<int>(), e.at("to").get<int>(), tf_from_json(e));
  if (j.contains("F")) {
    const auto& f = j.at("F");
    if (static_cast<int>(f.size()) != m.n) throw data_error("model json: F must list one entry per process");
    for (int k = 0; k < m.n; ++k) m.noise_shaping[static_cast<std::size_t>(k)] = tf_from_json(f.at(k));
  }
  if (j.contains("sigma_u")) {
    const auto sigma = j.at("sigma_u").get<std::vector<double>>();
    if (static_cast<int>(sigma.size()) != m.n)
      throw data_error("model json: sigma_u must list one variance per process");
    for (int k = 0; k < m.n; ++k) m.noise_variances(k) = sigma[static_cast<std::size_t>(k)];
  }
  return m;
}

json to_json(const MultiArrowGraph& g) {
  return json{{"n", g.n}, {"e1", pairs_to_json(g.single_headed)}, {"e2", pairs_to_json(g.double_headed)}};
}

MultiArrowGraph graph_from_json(const json& j) {
  MultiArrowGraph g(j.at("n").get<int>());
  g.single_headed = pairs_from_json(j.at("e1"));
  g.double_headed = pairs_from_json(j.at("e2"));
  g.validate();
  return g;
}

json to_json(const PartialGraph& g) {
  return json{{"n", g.n},
              {"undirected", pairs_to_json(g.undirected)},
              {"directed", pairs_to_json(g.directed)},
              {"e2", pairs_to_json(g.double_headed)}};
}

PartialGraph partial_graph_from_json(const json& j) {
  PartialGraph g(j.at("n").get<int>());
  g.undirected = pairs_from_json(j.at("undirected"));
  g.directed = pairs_from_json(j.at("directed"));
  g.double_headed = pairs_from_json(j.at("e2"));
  g.validate();
  return g;
}

json to_json(const ReconstructionResult& r) {
  json records = json::array();
  for (const auto& rec : r.records) {
    json scores = json::array();
    for (const auto& [set, f] : rec.fscores) scores.push_back(json{{"set", set}, {"fscore", f}});
    json jr{{"i", rec.i}, {"j", rec.j}, {"kind", kind_name(rec.kind)}, {"fscores", std::move(scores)}};
    if (rec.separating_set)
      jr["separating_set"] = *rec.separating_set;
    else
      jr["separating_set"] = nullptr;
    records.push_back(std::move(jr));
  }
  return json{{"n", r.n},
              {"graph", to_json(r.graph)},
              {"params",
               {{"threshold", r.params.threshold},
                {"lag_depth", r.params.lag_depth},
                {"max_cond_size", r.params.max_cond_size}}},
              {"records", std::move(records)}};
}

ReconstructionResult reconstruction_from_json(const json& j) {
  ReconstructionResult r;
  r.n = j.at("n").get<int>();
  r.graph = partial_graph_from_json(j.at("graph"));
  const auto& p = j.at("params");
  r.params.threshold = p.at("threshold").get<double>();
  r.params.lag_depth = p.at("lag_depth").get<int>();
  r.params.max_cond_size = p.at("max_cond_size").get<int>();
  for (const auto& jr : j.at("records")) {
    SeparationRecord rec;
    rec.i = jr.at("i").get<int>();
    rec.j = jr.at("j").get<int>();
    rec.kind = kind_from_name(jr.at("kind").get<std::string>());
    if (!jr.at("separating_set").is_null())
      rec.separating_set = jr.at("separating_set").get<std::vector<int>>();
    for (const auto& s : jr.at("fscores"))
      rec.fscores.emplace_back(s.at("set").get<std::vector<int>>(), s.at("fscore").get<double>());
    r.records.push_back(std::move(rec));
  }
  return r;
}

json to_json(const OrientationTrace& t) {
  json events = json::array();
  for (const auto& e : t.events)
    events.push_back(json{{"rule", to_string(e.rule)},
                          {"from", e.from},
                          {"to", e.to},
                          {"triple", e.triple},
                          {"witness", e.witness}});
  json conflicts = json::array();
  for (const auto& c : t.conflicts)
    conflicts.push_back(json{{"a", c.a}, {"b", c.b}, {"detail", c.detail}});
  return json{{"events", std::move(events)}, {"conflicts", std::move(conflicts)}};
}

json to_json(const FaithfulnessReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations)
    violations.push_back(json{{"kind", kind_name(v.kind)},
                              {"i", v.i},
                              {"j", v.j},
                              {"set", v.conditioning},
                              {"d_connected", v.d_conn},
                              {"separated", v.separated},
                              {"fscore", v.fscore}});
  return json{{"model_id", r.model_id},
              {"lag_depth", r.lag_depth},
              {"tolerance", r.tolerance},
              {"violations", std::move(violations)}};
}

json to_json(const ScanSummary& s) {
  return json{{"trials", s.trials},
              {"faithful", s.faithful},
              {"unfaithful", s.unfaithful},
              {"unstable", s.unstable}};
}

void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open: " + path);
  json j;
  in >> j;
  return j;
}

void write_data_csv(const std::string& path, const Eigen::MatrixXd& data) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw data_error("cannot open for writing: " + path);
  const int n = static_cast<int>(data.rows());
  for (int k = 0; k < n; ++k) std::fprintf(f, "%sy_%d", k ? "," : "", k + 1);
  std::fprintf(f, "\n");
  for (Eigen::Index t = 0; t < data.cols(); ++t) {
    for (int k = 0; k < n; ++k) std::fprintf(f, "%s%.12g", k ? "," : "", data(k, t));
    std::fprintf(f, "\n");
  }
  std::fclose(f);
}

Eigen::MatrixXd read_data_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw data_error("empty data file: " + path);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!rows.empty() && row.size() != rows.front().size())
      throw data_error("ragged data file: " + path);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw data_error("no samples in data file: " + path);
  Eigen::MatrixXd data(static_cast<Eigen::Index>(rows.front().size()),
                       static_cast<Eigen::Index>(rows.size()));
  for (std::size_t t = 0; t < rows.size(); ++t)
    for (std::size_t k = 0; k < rows[t].size(); ++k)
      data(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(t)) = rows[t][k];
  return data;
}

}  // namespace gemd
