#pragma once

// Path-enumeration oracle for d-connection, independent of the library's
// reachability implementation. Exponential; for test graphs only.

#include <set>
#include <vector>

#include "gemd/graph.hpp"
#include "gemd/rng.hpp"

namespace testutil {

struct PathPattern {
  std::vector<int> interior;
  std::vector<bool> is_collider;  // parallel to interior
};

class DsepOracle {
 public:
  explicit DsepOracle(const gemd::DirectedGraph& g) : g_(g) {
    desc_.resize(static_cast<std::size_t>(g.n) + 1);
    for (int v = 1; v <= g.n; ++v) {
      // plain forward BFS, written out so the oracle shares nothing with the library
      std::vector<int> frontier{v};
      std::set<int> seen;
      while (!frontier.empty()) {
        const int u = frontier.back();
        frontier.pop_back();
        for (const auto& [a, b] : g.edges)
          if (a == u && !seen.count(b)) {
            seen.insert(b);
            frontier.push_back(b);
          }
      }
      desc_[static_cast<std::size_t>(v)] = std::move(seen);
    }
  }

  std::vector<PathPattern> enumerate_paths(int i, int j) const {
    std::vector<PathPattern> out;
    std::vector<int> nodes{i};
    std::vector<bool> dirs;  // dirs[t]: edge between nodes[t] and nodes[t+1] points forward
    std::vector<char> visited(static_cast<std::size_t>(g_.n) + 1, 0);
    visited[static_cast<std::size_t>(i)] = 1;
    dfs(j, nodes, dirs, visited, out);
    return out;
  }

  bool d_connected(int i, int j, const std::vector<int>& s) const {
    const auto paths = enumerate_paths(i, j);
    return any_active(paths, s);
  }

  bool any_active(const std::vector<PathPattern>& paths, const std::vector<int>& s) const {
    for (const auto& p : paths)
      if (active(p, s)) return true;
    return false;
  }

 private:
  bool in_set(const std::vector<int>& s, int v) const {
    for (int x : s)
      if (x == v) return true;
    return false;
  }

  bool activated(int v, const std::vector<int>& s) const {
    if (in_set(s, v)) return true;
    for (int x : s)
      if (desc_[static_cast<std::size_t>(v)].count(x)) return true;
    return false;
  }

  bool active(const PathPattern& p, const std::vector<int>& s) const {
    for (std::size_t t = 0; t < p.interior.size(); ++t) {
      if (p.is_collider[t]) {
        if (!activated(p.interior[t], s)) return false;
      } else {
        if (in_set(s, p.interior[t])) return false;
      }
    }
    return true;
  }

  void dfs(int goal, std::vector<int>& nodes, std::vector<bool>& dirs, std::vector<char>& visited,
           std::vector<PathPattern>& out) const {
    const int cur = nodes.back();
    if (cur == goal) {
      PathPattern p;
      for (std::size_t t = 1; t + 1 < nodes.size(); ++t) {
        p.interior.push_back(nodes[t]);
        // collider: the edge from the left points in, the edge to the right points in
        p.is_collider.push_back(dirs[t - 1] && !dirs[t]);
      }
      out.push_back(std::move(p));
      return;
    }
    for (int next = 1; next <= g_.n; ++next) {
      if (visited[static_cast<std::size_t>(next)]) continue;
      for (const bool forward : {true, false}) {
        const bool present = forward ? g_.has_edge(cur, next) : g_.has_edge(next, cur);
        if (!present) continue;
        visited[static_cast<std::size_t>(next)] = 1;
        nodes.push_back(next);
        dirs.push_back(forward);
        dfs(goal, nodes, dirs, visited, out);
        dirs.pop_back();
        nodes.pop_back();
        visited[static_cast<std::size_t>(next)] = 0;
      }
    }
  }

  const gemd::DirectedGraph& g_;
  std::vector<std::set<int>> desc_;
};

/// Random digraph on n vertices with the given edge probability (per ordered
/// pair, cycles allowed).
inline gemd::DirectedGraph random_digraph(int n, double edge_prob, gemd::GaussianRng& rng) {
  gemd::DirectedGraph g(n);
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v)
      if (u != v && rng.uniform() < edge_prob) g.add_edge(u, v);
  return g;
}

}  // namespace testutil
