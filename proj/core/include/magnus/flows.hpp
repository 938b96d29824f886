#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "magnus/oracle.hpp"

namespace magnus {

// Positive edge t --x_i--> t x_i of a Cayley or Schreier graph, identified by
// its tail and label. Negative edges are never stored.
struct Edge {
  VertexKey tail;
  int generator = 1;

  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// The graph a flow lives on: Cay(X;N) or Sch(X;<N,u>).
class GraphContext {
 public:
  enum class Mode { cayley, schreier };

  static GraphContext cayley(OraclePtr oracle);
  static GraphContext schreier(OraclePtr oracle, Word u, std::shared_ptr<const CosetReducer> reducer);

  Mode mode() const { return mode_; }
  bool is_cayley() const { return mode_ == Mode::cayley; }
  const GroupOracle& oracle() const { return *oracle_; }
  const OraclePtr& oracle_ptr() const { return oracle_; }
  std::uint64_t id() const { return id_; }
  // Word u for a Schreier context, empty for Cayley.
  const Word& subgroup_word() const { return u_; }

  // Image of a Cayley vertex in this graph.
  VertexKey vertex(const VertexKey& cayley_key) const;
  VertexKey root() const { return vertex(oracle_->identity_key()); }
  // Head of the positive edge (tail, generator).
  VertexKey head(const Edge& e) const;

 private:
  GraphContext(Mode mode, OraclePtr oracle, Word u, std::shared_ptr<const CosetReducer> reducer);

  Mode mode_;
  OraclePtr oracle_;
  Word u_;
  std::shared_ptr<const CosetReducer> reducer_;
  std::uint64_t id_;
};

// Finitely supported balanced integer function on edges. Only positive edges
// are stored and zero values are erased, so map equality is flow equality.
class FlowMap {
 public:
  using Entries = std::map<Edge, std::int64_t>;

  FlowMap() = default;
  explicit FlowMap(std::uint64_t context_id) : context_id_(context_id) {}

  // 0 means "not bound to a context"; such flows combine with anything.
  std::uint64_t context_id() const { return context_id_; }
  const Entries& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  std::int64_t at(const Edge& e) const;
  // Adds delta to a positive edge; the entry disappears when it reaches 0.
  void add(const Edge& e, std::int64_t delta);

  FlowMap& operator+=(const FlowMap& rhs);
  FlowMap& operator-=(const FlowMap& rhs);

  friend bool operator==(const FlowMap& a, const FlowMap& b) { return a.entries_ == b.entries_; }

 private:
  friend FlowMap operator-(const FlowMap&);
  void check_context(const FlowMap& rhs) const;

  std::uint64_t context_id_ = 0;
  Entries entries_;
};

FlowMap operator+(FlowMap lhs, const FlowMap& rhs);
FlowMap operator-(FlowMap lhs, const FlowMap& rhs);
FlowMap operator-(const FlowMap& f);
FlowMap negate(const FlowMap& f);
FlowMap scale(const FlowMap& f, std::int64_t k);

// Finitely supported element of ZG (coefficients per vertex key).
class GroupRingElement {
 public:
  using Coefficients = std::map<VertexKey, std::int64_t>;

  GroupRingElement() = default;
  static GroupRingElement delta(const VertexKey& k, std::int64_t coefficient = 1);

  const Coefficients& coefficients() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }
  std::int64_t at(const VertexKey& k) const;
  void add(const VertexKey& k, std::int64_t delta);

  GroupRingElement& operator+=(const GroupRingElement& rhs);
  GroupRingElement& operator-=(const GroupRingElement& rhs);
  friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

 private:
  Coefficients coeffs_;
};

GroupRingElement operator+(GroupRingElement lhs, const GroupRingElement& rhs);
GroupRingElement operator-(GroupRingElement lhs, const GroupRingElement& rhs);

// Flow of the path labeled w starting at `start` (a Cayley vertex; in a
// Schreier context any representative of the start coset).
FlowMap flow_of(const GraphContext& ctx, const Word& w, const VertexKey& start);
FlowMap flow_of(const GraphContext& ctx, const Word& w);

// Flow of a path given by the keys of its vertices (|w|+1 Cayley keys).
FlowMap flow_along(const GraphContext& ctx, const Word& w, const std::vector<VertexKey>& path);

// Left action of g in G on Cayley flows: the entry at (t,i) moves to (g t, i).
FlowMap shift(const GraphContext& ctx, const Word& g, const FlowMap& f);
FlowMap shift_by_key(const GraphContext& ctx, const VertexKey& g, const FlowMap& f);

// Sum over positive edges of |f(e)|.
std::int64_t norm(const FlowMap& f);

// Per-vertex imbalance: outgoing minus incoming over positive edges.
GroupRingElement net_flow(const GraphContext& ctx, const FlowMap& f);
bool is_circulation(const GraphContext& ctx, const FlowMap& f);

// Augmentation: sum of coefficients.
std::int64_t augment(const GroupRingElement& z);

// Left multiplication of a ring element by g.
GroupRingElement shift(const GraphContext& ctx, const Word& g, const GroupRingElement& z);

// A flow with net_flow = z, for z in the augmentation kernel. Each g - 1 is
// split along the prefixes of a representative word of g.
FlowMap telescope(const GraphContext& ctx, const GroupRingElement& z);

// Given g nontrivial in G and f with (1-g)f a circulation, returns a
// circulation f* with (1-g)f = (1-g)f*.
FlowMap repair_circulation(const GraphContext& ctx, const Word& g, const FlowMap& f);

// A word m in N whose Cayley flow is the circulation f.
Word realize_circulation(const GraphContext& ctx, const FlowMap& f);

// Image of a Cayley flow under the projection Cay(X;N) -> Sch(X;<N,u>).
FlowMap project(const GraphContext& schreier, const FlowMap& cayley_flow);

}  // namespace magnus
