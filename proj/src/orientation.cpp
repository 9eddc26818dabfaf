#include "gemd/orientation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace gemd {

const char* to_string(OrientRule rule) {
  switch (rule) {
    case OrientRule::ColliderA: return "collider_A";
    case OrientRule::ColliderB: return "collider_B";
    case OrientRule::PropagationA: return "propagation_A";
    case OrientRule::PropagationB: return "propagation_B";
  }
  return "?";
}

std::string OrientationTrace::rule_log() const {
  std::ostringstream os;
  for (const auto& e : events) {
    os << to_string(e.rule) << ": orient " << e.from << " -> " << e.to << " [triple " << e.triple[0]
       << ", " << e.triple[1] << ", " << e.triple[2] << "; witness {";
    for (std::size_t k = 0; k < e.witness.size(); ++k) os << (k ? "," : "") << e.witness[k];
    os << "}]\n";
  }
  for (const auto& c : conflicts)
    os << "conflict: edge " << c.a << " - " << c.b << " (" << c.detail << ")\n";
  return os.str();
}

namespace {

bool contains(const std::vector<int>& v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

std::pair<int, int> unordered(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

struct Orienter {
  PartialGraph graph;
  OrientationTrace trace;
  std::set<std::pair<int, int>> conflicted;  // unordered pairs taken out of play

  // One batch phase: pending demands keyed by unordered pair.
  std::map<std::pair<int, int>, std::vector<OrientationEvent>> pending;

  void demand(OrientationEvent e) { pending[unordered(e.from, e.to)].push_back(std::move(e)); }

  bool apply() {
    bool changed = false;
    for (auto& [edge, events] : pending) {
      if (conflicted.count(edge) || !graph.undirected.count(edge)) continue;
      const bool fwd = std::any_of(events.begin(), events.end(),
                                   [&](const auto& e) { return e.from == edge.first; });
      const bool bwd = std::any_of(events.begin(), events.end(),
                                   [&](const auto& e) { return e.from == edge.second; });
      if (fwd && bwd) {
        conflicted.insert(edge);
        std::ostringstream os;
        os << "rules demanded both directions:";
        for (const auto& e : events) os << " " << to_string(e.rule);
        trace.conflicts.push_back({edge.first, edge.second, os.str()});
        continue;
      }
      graph.undirected.erase(edge);
      graph.directed.insert(fwd ? edge : std::pair<int, int>{edge.second, edge.first});
      for (auto& e : events) trace.events.push_back(std::move(e));
      changed = true;
    }
    pending.clear();
    return changed;
  }
};

void collider_phase_a(Orienter& o, const ReconstructionResult& result) {
  for (const auto& [a, k] : o.graph.double_headed) {
    for (int b = 1; b <= o.graph.n; ++b) {
      if (b == a || b == k || !o.graph.undirected.count(unordered(k, b))) continue;
      const SeparationRecord* rec = result.delayed_record(a, b);
      if (!rec || !rec->separating_set) continue;
      if (!contains(*rec->separating_set, k))
        o.demand({OrientRule::ColliderA, b, k, {a, k, b}, *rec->separating_set});
    }
  }
  o.apply();
}

void collider_phase_b(Orienter& o, const ReconstructionResult& result) {
  for (int k = 1; k <= o.graph.n; ++k) {
    for (int i = 1; i <= o.graph.n; ++i) {
      if (i == k || !o.graph.undirected.count(unordered(i, k))) continue;
      for (int j = i + 1; j <= o.graph.n; ++j) {
        if (j == k || j == i || !o.graph.undirected.count(unordered(j, k))) continue;
        const SeparationRecord* rec = result.feedthrough_record(i, j);
        if (!rec || !rec->separating_set) continue;
        if (!contains(*rec->separating_set, k)) {
          o.demand({OrientRule::ColliderB, i, k, {i, k, j}, *rec->separating_set});
          o.demand({OrientRule::ColliderB, j, k, {i, k, j}, *rec->separating_set});
        }
      }
    }
  }
  o.apply();
}

// k => i beside undirected i - j, with (candidate k, target j) separated.
void propagation_phase_a(Orienter& o, const ReconstructionResult& result) {
  for (const auto& edge : o.graph.undirected) {
    for (const int i : {edge.first, edge.second}) {
      const int j = i == edge.first ? edge.second : edge.first;
      for (const auto& [k, head] : o.graph.double_headed) {
        if (head != i || k == j) continue;
        const SeparationRecord* rec = result.delayed_record(k, j);
        if (rec && rec->separating_set)
          o.demand({OrientRule::PropagationA, i, j, {k, i, j}, *rec->separating_set});
      }
    }
  }
  o.apply();
}

// k -> i beside undirected i - j, with {k, j} feedthrough-separated.
void propagation_phase_b(Orienter& o, const ReconstructionResult& result) {
  for (const auto& edge : o.graph.undirected) {
    for (const int i : {edge.first, edge.second}) {
      const int j = i == edge.first ? edge.second : edge.first;
      for (const auto& [k, head] : o.graph.directed) {
        if (head != i || k == j) continue;
        const SeparationRecord* rec = result.feedthrough_record(k, j);
        if (rec && rec->separating_set)
          o.demand({OrientRule::PropagationB, i, j, {k, i, j}, *rec->separating_set});
      }
    }
  }
  o.apply();
}

}  // namespace

std::pair<PartialGraph, OrientationTrace> detect_colliders(const ReconstructionResult& result) {
  Orienter o;
  o.graph = result.graph;
  collider_phase_a(o, result);
  collider_phase_b(o, result);
  return {std::move(o.graph), std::move(o.trace)};
}

std::pair<PartialGraph, OrientationTrace> propagate(const PartialGraph& graph,
                                                    const OrientationTrace& trace,
                                                    const ReconstructionResult& records) {
  Orienter o;
  o.graph = graph;
  o.trace = trace;
  for (const auto& c : trace.conflicts) o.conflicted.insert(unordered(c.a, c.b));
  while (true) {
    const std::size_t before_events = o.trace.events.size();
    const std::size_t before_conflicts = o.trace.conflicts.size();
    propagation_phase_a(o, records);
    propagation_phase_b(o, records);
    if (o.trace.events.size() == before_events && o.trace.conflicts.size() == before_conflicts)
      break;
  }
  return {std::move(o.graph), std::move(o.trace)};
}

std::pair<PartialGraph, OrientationTrace> orient_all(const ReconstructionResult& result) {
  auto [graph, trace] = detect_colliders(result);
  return propagate(graph, trace, result);
}

}  // namespace gemd
