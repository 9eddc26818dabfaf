#pragma once

#include <array>
#include <set>
#include <utility>
#include <vector>

#include "gemd/lti.hpp"

namespace gemd {

// Vertices are 1-based throughout (y_1 .. y_n), matching the serialized form.

struct DirectedGraph {
  int n = 0;
  std::set<std::pair<int, int>> edges;  // (from, to)

  DirectedGraph() = default;
  explicit DirectedGraph(int vertices) : n(vertices) {}

  void add_edge(int u, int v);
  bool has_edge(int u, int v) const { return edges.count({u, v}) != 0; }
};

struct UndirectedGraph {
  int n = 0;
  std::set<std::pair<int, int>> edges;  // stored with first < second

  UndirectedGraph() = default;
  explicit UndirectedGraph(int vertices) : n(vertices) {}

  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;

  bool operator==(const UndirectedGraph& o) const { return n == o.n && edges == o.edges; }
};

/// Multi-arrowed graph: E1 holds single-headed links (feedthrough-capable),
/// E2 holds double-headed links (strictly causal influence only). The two
/// sets are disjoint as ordered pairs and E1 carries no self-pairs.
struct MultiArrowGraph {
  int n = 0;
  std::set<std::pair<int, int>> single_headed;  // E1
  std::set<std::pair<int, int>> double_headed;  // E2

  MultiArrowGraph() = default;
  explicit MultiArrowGraph(int vertices) : n(vertices) {}

  void add_single(int u, int v);
  void add_double(int u, int v);
  void validate() const;  // throws structure_error on a broken invariant

  bool operator==(const MultiArrowGraph& o) const {
    return n == o.n && single_headed == o.single_headed && double_headed == o.double_headed;
  }
};

/// Partially oriented output graph: undirected edges, oriented feedthrough
/// edges, and double-headed (strictly causal) edges, pairwise disjoint on
/// underlying unordered pairs.
struct PartialGraph {
  int n = 0;
  std::set<std::pair<int, int>> undirected;     // first < second
  std::set<std::pair<int, int>> directed;       // oriented feedthrough (from, to)
  std::set<std::pair<int, int>> double_headed;  // (from, to)

  PartialGraph() = default;
  explicit PartialGraph(int vertices) : n(vertices) {}

  bool has_undirected(int u, int v) const;
  void validate() const;

  /// All unordered pairs touched by any edge class.
  std::set<std::pair<int, int>> skeleton_pairs() const;

  bool operator==(const PartialGraph& o) const {
    return n == o.n && undirected == o.undirected && directed == o.directed &&
           double_headed == o.double_headed;
  }
};

DirectedGraph causal_graph(const MultiArrowGraph& g);
UndirectedGraph skeleton(const DirectedGraph& g);
UndirectedGraph skeleton(const MultiArrowGraph& g);

/// True iff the single-headed subgraph is acyclic.
bool check_recursive(const MultiArrowGraph& g);

/// The subgraph of single-headed edges; throws structure_error when that
/// subgraph has a cycle (the representation is not recursive).
DirectedGraph instantaneous_graph(const MultiArrowGraph& g);

/// Ordered triples (i, k, j) with i -> k <- j, i != j. Both orders of the
/// coparents appear.
std::vector<std::array<int, 3>> colliders(const DirectedGraph& g);

std::set<int> descendants(const DirectedGraph& g, int v);

/// d-connection of i and j given s, by reachability over (vertex, entry
/// direction) states. Colliders pass when they or one of their descendants
/// lie in s; non-colliders block when they lie in s.
bool d_connected(const DirectedGraph& g, int i, int j, const std::vector<int>& s);

/// d-connection inside the graph of instantaneous propagations.
bool feedthrough_d_connected(const MultiArrowGraph& g, int i, int j, const std::vector<int>& s);

/// Whether the one-step-delayed copy of y_i can reach y_j: some double-headed
/// edge (i, c) exists such that a fresh vertex carrying only the re-classified
/// single-headed link into c is d-connected to j given s in the instantaneous
/// graph. The delayed copy is a separate vertex; the present y_i keeps its own
/// single-headed edges and participates in paths as an ordinary node.
bool delayed_d_connected(const MultiArrowGraph& g, int i, int j, const std::vector<int>& s);

}  // namespace gemd
