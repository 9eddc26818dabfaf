#include "gemd/builtins.hpp"

#include "gemd/rng.hpp"

namespace gemd {
namespace builtins {

LdimModel triangle(double a, double b, double c) {
  LdimModel m(3);
  m.set_dynamics(1, 2, TransferFunctionD::gain(a));
  m.set_dynamics(1, 3, TransferFunctionD::gain(c));
  m.set_dynamics(2, 3, TransferFunctionD::gain(b));
  return m;
}

LdimModel triangle_confounder(double a, double b) {
  LdimModel m(3);
  m.set_dynamics(1, 2, TransferFunctionD::gain(a));
  m.set_dynamics(3, 2, TransferFunctionD::gain(b / (b * b + 1.0)));
  m.noise_variances << 1.0, 1.0 / (b * b + 1.0), b * b + 1.0;
  return m;
}

MultiArrowGraph triangle_graph() {
  MultiArrowGraph g(3);
  g.add_single(1, 2);
  g.add_single(1, 3);
  g.add_single(2, 3);
  return g;
}

LdimModel diamond(double gain) {
  LdimModel m(5);
  m.set_dynamics(1, 2, TransferFunctionD::gain(gain));
  m.set_dynamics(2, 3, TransferFunctionD::gain(gain));
  m.set_dynamics(1, 4, TransferFunctionD::gain(gain));
  m.set_dynamics(3, 4, TransferFunctionD::gain(gain));
  m.set_dynamics(4, 5, TransferFunctionD::gain(gain));
  return m;
}

LdimModel six_node_network(const SixNodeParams& p) {
  LdimModel m(6);
  m.set_dynamics(1, 2, TransferFunctionD::gain(p.a21));
  if (p.combined_b32)
    m.set_dynamics(2, 3, TransferFunctionD(PolynomialD({p.a32, p.b32}), PolynomialD::one()));
  else
    m.set_dynamics(2, 3, TransferFunctionD::delay_gain(p.b32, 1));
  m.set_dynamics(2, 4, TransferFunctionD::gain(p.a42));
  m.set_dynamics(3, 4, TransferFunctionD::gain(p.a43));
  m.set_dynamics(4, 5, TransferFunctionD::gain(p.a54));
  m.set_dynamics(6, 4, TransferFunctionD::gain(p.a64));
  m.set_dynamics(5, 2, TransferFunctionD::delay_gain(p.b25, 1));
  return m;
}

MultiArrowGraph six_node_graph() {
  MultiArrowGraph g(6);
  g.add_single(1, 2);
  g.add_single(2, 3);
  g.add_single(2, 4);
  g.add_single(3, 4);
  g.add_single(4, 5);
  g.add_single(6, 4);
  g.add_double(5, 2);
  return g;
}

SixNodeParams draw_six_node_params(GaussianRng& rng, double lo, double hi) {
  SixNodeParams p;
  p.a21 = rng.uniform(lo, hi);
  p.a32 = rng.uniform(lo, hi);
  p.a42 = rng.uniform(lo, hi);
  p.a43 = rng.uniform(lo, hi);
  p.a54 = rng.uniform(lo, hi);
  p.a64 = rng.uniform(lo, hi);
  p.b32 = rng.uniform(lo, hi);
  p.b25 = rng.uniform(lo, hi);
  return p;
}

}  // namespace builtins
}  // namespace gemd
