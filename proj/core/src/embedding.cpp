#include "magnus/embedding.hpp"

namespace magnus {

MagnusElement magnus_identity(const GraphContext& cayley) {
  return {cayley.oracle().identity_key(), FlowMap(cayley.id())};
}

MagnusElement generator_image(const GraphContext& cayley, const Letter& l) {
  const GroupOracle& oracle = cayley.oracle();
  MagnusElement m{oracle.key(Word{l}), FlowMap(cayley.id())};
  FlowMap basis(cayley.id());
  basis.add(Edge{oracle.identity_key(), l.index}, 1);
  if (l.sign > 0)
    m.flow = basis;
  else
    m.flow = -shift(cayley, Word{l}, basis);
  return m;
}

MagnusElement multiply(const GraphContext& cayley, const MagnusElement& a, const MagnusElement& b) {
  const GroupOracle& oracle = cayley.oracle();
  const Word left = oracle.representative(a.image);
  return {oracle.right_multiply(a.image, oracle.representative(b.image)), a.flow + shift(cayley, left, b.flow)};
}

MagnusElement mu_image(const GraphContext& cayley, const Word& w) {
  MagnusElement acc = magnus_identity(cayley);
  for (const auto& l : w) acc = multiply(cayley, acc, generator_image(cayley, l));
  return acc;
}

MagnusElement mu_image(const OraclePtr& base, const Word& w) { return mu_image(GraphContext::cayley(base), w); }

bool is_magnus_image(const GraphContext& cayley, const VertexKey& g, const FlowMap& f) {
  const VertexKey root = cayley.oracle().identity_key();
  return net_flow(cayley, f) == GroupRingElement::delta(root) - GroupRingElement::delta(g);
}

}  // namespace magnus
