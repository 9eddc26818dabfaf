#include "gemd/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace gemd {

namespace {

void require_vertex(int n, int v, const char* what) {
  if (v < 1 || v > n) throw structure_error(std::string(what) + ": vertex out of range");
}

std::pair<int, int> unordered(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

struct Adjacency {
  std::vector<std::vector<int>> children;
  std::vector<std::vector<int>> parents;

  explicit Adjacency(const DirectedGraph& g)
      : children(static_cast<std::size_t>(g.n) + 1), parents(static_cast<std::size_t>(g.n) + 1) {
    for (const auto& [u, v] : g.edges) {
      children[static_cast<std::size_t>(u)].push_back(v);
      parents[static_cast<std::size_t>(v)].push_back(u);
    }
  }
};

bool acyclic(int n, const std::set<std::pair<int, int>>& edges) {
  std::vector<int> indeg(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::vector<int>> children(static_cast<std::size_t>(n) + 1);
  for (const auto& [u, v] : edges) {
    ++indeg[static_cast<std::size_t>(v)];
    children[static_cast<std::size_t>(u)].push_back(v);
  }
  std::deque<int> ready;
  for (int v = 1; v <= n; ++v)
    if (indeg[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
  int seen = 0;
  while (!ready.empty()) {
    const int v = ready.front();
    ready.pop_front();
    ++seen;
    for (int c : children[static_cast<std::size_t>(v)])
      if (--indeg[static_cast<std::size_t>(c)] == 0) ready.push_back(c);
  }
  return seen == n;
}

}  // namespace

void DirectedGraph::add_edge(int u, int v) {
  require_vertex(n, u, "DirectedGraph");
  require_vertex(n, v, "DirectedGraph");
  if (u == v) throw structure_error("DirectedGraph: self-loops are not representable");
  edges.insert({u, v});
}

void UndirectedGraph::add_edge(int u, int v) {
  require_vertex(n, u, "UndirectedGraph");
  require_vertex(n, v, "UndirectedGraph");
  if (u == v) throw structure_error("UndirectedGraph: self-loops are not representable");
  edges.insert(unordered(u, v));
}

bool UndirectedGraph::has_edge(int u, int v) const { return edges.count(unordered(u, v)) != 0; }

void MultiArrowGraph::add_single(int u, int v) {
  require_vertex(n, u, "MultiArrowGraph");
  require_vertex(n, v, "MultiArrowGraph");
  single_headed.insert({u, v});
}

void MultiArrowGraph::add_double(int u, int v) {
  require_vertex(n, u, "MultiArrowGraph");
  require_vertex(n, v, "MultiArrowGraph");
  double_headed.insert({u, v});
}

void MultiArrowGraph::validate() const {
  for (const auto& e : single_headed) {
    require_vertex(n, e.first, "MultiArrowGraph");
    require_vertex(n, e.second, "MultiArrowGraph");
    if (e.first == e.second)
      throw structure_error("MultiArrowGraph: feedthrough self-loop is an algebraic loop");
    if (double_headed.count(e))
      throw structure_error("MultiArrowGraph: edge classes overlap on an ordered pair");
  }
  for (const auto& e : double_headed) {
    require_vertex(n, e.first, "MultiArrowGraph");
    require_vertex(n, e.second, "MultiArrowGraph");
    if (e.first == e.second)
      throw structure_error("MultiArrowGraph: self-loops are not representable");
  }
}

bool PartialGraph::has_undirected(int u, int v) const { return undirected.count(unordered(u, v)) != 0; }

void PartialGraph::validate() const {
  std::set<std::pair<int, int>> seen;
  auto claim = [&](int u, int v, const char* what) {
    require_vertex(n, u, what);
    require_vertex(n, v, what);
    if (u == v) throw structure_error("PartialGraph: self-loops are not representable");
    if (!seen.insert(unordered(u, v)).second)
      throw structure_error("PartialGraph: edge classes overlap on an unordered pair");
  };
  for (const auto& [u, v] : undirected) {
    if (u >= v) throw structure_error("PartialGraph: undirected pairs must be stored ordered");
    claim(u, v, "PartialGraph");
  }
  for (const auto& [u, v] : directed) claim(u, v, "PartialGraph");
  std::set<std::pair<int, int>> dh_pairs;
  for (const auto& [u, v] : double_headed) {
    require_vertex(n, u, "PartialGraph");
    require_vertex(n, v, "PartialGraph");
    if (u == v) throw structure_error("PartialGraph: self-loops are not representable");
    const auto key = unordered(u, v);
    if (seen.count(key) && !dh_pairs.count(key))
      throw structure_error("PartialGraph: edge classes overlap on an unordered pair");
    dh_pairs.insert(key);
    seen.insert(key);
  }
}

std::set<std::pair<int, int>> PartialGraph::skeleton_pairs() const {
  std::set<std::pair<int, int>> pairs = undirected;
  for (const auto& [u, v] : directed) pairs.insert(unordered(u, v));
  for (const auto& [u, v] : double_headed) pairs.insert(unordered(u, v));
  return pairs;
}

DirectedGraph causal_graph(const MultiArrowGraph& g) {
  DirectedGraph out(g.n);
  for (const auto& [u, v] : g.single_headed) out.add_edge(u, v);
  for (const auto& [u, v] : g.double_headed) out.add_edge(u, v);
  return out;
}

UndirectedGraph skeleton(const DirectedGraph& g) {
  UndirectedGraph out(g.n);
  for (const auto& [u, v] : g.edges) out.add_edge(u, v);
  return out;
}

UndirectedGraph skeleton(const MultiArrowGraph& g) { return skeleton(causal_graph(g)); }

bool check_recursive(const MultiArrowGraph& g) { return acyclic(g.n, g.single_headed); }

DirectedGraph instantaneous_graph(const MultiArrowGraph& g) {
  if (!check_recursive(g))
    throw structure_error("instantaneous_graph: single-headed subgraph has a cycle");
  DirectedGraph out(g.n);
  for (const auto& [u, v] : g.single_headed) out.add_edge(u, v);
  return out;
}

std::vector<std::array<int, 3>> colliders(const DirectedGraph& g) {
  const Adjacency adj(g);
  std::vector<std::array<int, 3>> out;
  for (int k = 1; k <= g.n; ++k) {
    const auto& pa = adj.parents[static_cast<std::size_t>(k)];
    for (int i : pa)
      for (int j : pa)
        if (i != j) out.push_back({i, k, j});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::set<int> descendants(const DirectedGraph& g, int v) {
  require_vertex(g.n, v, "descendants");
  const Adjacency adj(g);
  std::set<int> out;
  std::deque<int> frontier{v};
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop_front();
    for (int c : adj.children[static_cast<std::size_t>(u)])
      if (out.insert(c).second) frontier.push_back(c);
  }
  return out;
}

bool d_connected(const DirectedGraph& g, int i, int j, const std::vector<int>& s) {
  require_vertex(g.n, i, "d_connected");
  require_vertex(g.n, j, "d_connected");
  if (i == j) throw structure_error("d_connected: endpoints must differ");
  std::vector<char> in_s(static_cast<std::size_t>(g.n) + 1, 0);
  for (int v : s) {
    require_vertex(g.n, v, "d_connected");
    if (v == i || v == j) throw structure_error("d_connected: conditioning set contains an endpoint");
    in_s[static_cast<std::size_t>(v)] = 1;
  }

  const Adjacency adj(g);

  // A collider passes iff it or one of its descendants is conditioned,
  // i.e. iff it is an ancestor of s (or in s itself).
  std::vector<char> activated(static_cast<std::size_t>(g.n) + 1, 0);
  {
    std::deque<int> frontier;
    for (int v : s) {
      activated[static_cast<std::size_t>(v)] = 1;
      frontier.push_back(v);
    }
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop_front();
      for (int p : adj.parents[static_cast<std::size_t>(v)])
        if (!activated[static_cast<std::size_t>(p)]) {
          activated[static_cast<std::size_t>(p)] = 1;
          frontier.push_back(p);
        }
    }
  }

  // States: (vertex, arrival direction). kIn = the traversed edge points into
  // the vertex, kOut = it points out of the vertex (walked against it).
  constexpr int kIn = 0, kOut = 1;
  std::vector<std::array<char, 2>> visited(static_cast<std::size_t>(g.n) + 1, {0, 0});
  std::deque<std::pair<int, int>> queue;
  auto push = [&](int v, int dir) {
    if (v == j) return true;
    if (!visited[static_cast<std::size_t>(v)][static_cast<std::size_t>(dir)]) {
      visited[static_cast<std::size_t>(v)][static_cast<std::size_t>(dir)] = 1;
      queue.emplace_back(v, dir);
    }
    return false;
  };

  for (int c : adj.children[static_cast<std::size_t>(i)])
    if (push(c, kIn)) return true;
  for (int p : adj.parents[static_cast<std::size_t>(i)])
    if (push(p, kOut)) return true;

  while (!queue.empty()) {
    const auto [v, dir] = queue.front();
    queue.pop_front();
    const bool conditioned = in_s[static_cast<std::size_t>(v)] != 0;
    if (dir == kIn) {
      if (!conditioned)
        for (int c : adj.children[static_cast<std::size_t>(v)])
          if (push(c, kIn)) return true;
      if (activated[static_cast<std::size_t>(v)])
        for (int p : adj.parents[static_cast<std::size_t>(v)])
          if (push(p, kOut)) return true;
    } else {
      if (!conditioned) {
        for (int c : adj.children[static_cast<std::size_t>(v)])
          if (push(c, kIn)) return true;
        for (int p : adj.parents[static_cast<std::size_t>(v)])
          if (push(p, kOut)) return true;
      }
    }
  }
  return false;
}

bool feedthrough_d_connected(const MultiArrowGraph& g, int i, int j, const std::vector<int>& s) {
  return d_connected(instantaneous_graph(g), i, j, s);
}

bool delayed_d_connected(const MultiArrowGraph& g, int i, int j, const std::vector<int>& s) {
  require_vertex(g.n, i, "delayed_d_connected");
  require_vertex(g.n, j, "delayed_d_connected");
  const DirectedGraph inst = instantaneous_graph(g);
  for (const auto& [u, c] : g.double_headed) {
    if (u != i) continue;
    if (c == j) return true;  // the re-classified edge reaches j directly
    DirectedGraph aug(inst.n + 1);
    aug.edges = inst.edges;
    aug.add_edge(inst.n + 1, c);
    if (d_connected(aug, inst.n + 1, j, s)) return true;
  }
  return false;
}

}  // namespace gemd
