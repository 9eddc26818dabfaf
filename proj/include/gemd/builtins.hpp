#pragma once

#include "gemd/ldim.hpp"
#include "gemd/rng.hpp"

namespace gemd {
namespace builtins {

/// Three-process chain-plus-shortcut gain model: y_2 = a y_1 + e_2,
/// y_3 = c y_1 + b y_2 + e_3, unit white sources. With c = -a*b the shortcut
/// cancels the chain and the pair (1, 3) decorrelates.
LdimModel triangle(double a, double b, double c);

/// The sparser confounded model whose spectrum matches the cancelled triangle:
/// y_2 = a y_1 + (b / (b^2+1)) y_3 + e_2, source variances (1, 1/(b^2+1), b^2+1).
LdimModel triangle_confounder(double a, double b);

MultiArrowGraph triangle_graph();

/// Five-process all-gain diamond: 1 -> 2 -> 3, 1 -> 4 <- 3, 4 -> 5.
LdimModel diamond(double gain = 1.0);

struct SixNodeParams {
  double a21 = 0.4, a32 = 0.4, a42 = 0.4, a43 = 0.4, a54 = 0.4, a64 = 0.4;
  double b32 = 0.4, b25 = 0.4;
  // b32 placement: combined with the 2 -> 3 feedthrough entry (default), or
  // replacing it as the entry's only term.
  bool combined_b32 = true;
};

/// Six-process network with a feedback loop closed by a strictly causal link:
/// feedthrough gains on 1->2, 2->3, 2->4, 3->4, 4->5, 6->4; a one-step delayed
/// term added to the 2->3 entry; strictly causal feedback 5 => 2.
LdimModel six_node_network(const SixNodeParams& p = {});

/// Its perfect graphical representation (with the default b32 placement).
MultiArrowGraph six_node_graph();

/// Draw the six-node parameters uniformly from (lo, hi).
SixNodeParams draw_six_node_params(GaussianRng& rng, double lo = 0.3, double hi = 0.6);

}  // namespace builtins
}  // namespace gemd
