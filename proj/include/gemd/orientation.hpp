#pragma once

#include <array>
#include <string>
#include <vector>

#include "gemd/gemd.hpp"

namespace gemd {

enum class OrientRule { ColliderA, ColliderB, PropagationA, PropagationB };

const char* to_string(OrientRule rule);

struct OrientationEvent {
  OrientRule rule;
  int from = 0;
  int to = 0;
  std::array<int, 3> triple{};  // (tail/coparent, middle, coparent)
  std::vector<int> witness;
};

struct OrientationConflict {
  int a = 0;
  int b = 0;  // the unordered edge both directions were demanded for
  std::string detail;
};

struct OrientationTrace {
  std::vector<OrientationEvent> events;
  std::vector<OrientationConflict> conflicts;

  std::string rule_log() const;  // one line per firing, for audit
};

/// Collider detection on the reconstruction output.
///
/// Type A (past-present-present): for a double-headed edge a => k and an
/// undirected edge k - b, if the delayed search for (candidate a, target b)
/// found a set without k, orient b -> k.
///
/// Type B (present-present-present): for undirected i - k - j, if the
/// feedthrough search for {i, j} found a set without k, orient i -> k <- j.
///
/// Each phase evaluates all its triples against the current graph and applies
/// the collected demands at once; opposite demands on one edge leave it
/// undirected and record a conflict.
std::pair<PartialGraph, OrientationTrace> detect_colliders(const ReconstructionResult& result);

/// Orientation propagation to a fixpoint, alternating the two rules.
///
/// Type A: undirected i - j adjacent to k => i, with a delayed separating set
/// found for (candidate k, target j): i would have been flagged a collider
/// between them if it were one, so orient i -> j.
///
/// Type B: same with an oriented feedthrough edge k -> i and a feedthrough
/// separating set for {k, j}.
std::pair<PartialGraph, OrientationTrace> propagate(const PartialGraph& graph,
                                                    const OrientationTrace& trace,
                                                    const ReconstructionResult& records);

/// detect_colliders followed by propagate; edges no rule reaches stay
/// undirected.
std::pair<PartialGraph, OrientationTrace> orient_all(const ReconstructionResult& result);

}  // namespace gemd
