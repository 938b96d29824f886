#pragma once

#include "magnus/flows.hpp"
#include "magnus/oracle.hpp"

namespace magnus {

// The matrix (g pi; 0 1) of M(X;N): an element g of F/N and a flow on Cay(X;N).
struct MagnusElement {
  VertexKey image;
  FlowMap flow;

  friend bool operator==(const MagnusElement&, const MagnusElement&) = default;
};

MagnusElement magnus_identity(const GraphContext& cayley);

// x_i -> (x_i, pi_i) and x_i^-1 -> (x_i^-1, -x_i^-1 pi_i).
MagnusElement generator_image(const GraphContext& cayley, const Letter& l);

// (g1, f1)(g2, f2) = (g1 g2, f1 + g1 f2).
MagnusElement multiply(const GraphContext& cayley, const MagnusElement& a, const MagnusElement& b);

// Product of the generator images of the letters of w.
MagnusElement mu_image(const GraphContext& cayley, const Word& w);
MagnusElement mu_image(const OraclePtr& base, const Word& w);

// Membership in mu(F): net_flow(f) = 1 - g.
bool is_magnus_image(const GraphContext& cayley, const VertexKey& g, const FlowMap& f);

}  // namespace magnus
