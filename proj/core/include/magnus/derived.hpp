#pragma once

#include <cstdint>
#include <optional>

#include "magnus/flows.hpp"
#include "magnus/oracle.hpp"

namespace magnus {

// F/N' realized through the Magnus embedding over a base oracle for F/N.
// Keys are the pair (base key of w, sorted flow of w on Cay(X;N)), so towers
// F/N^(d) nest these pairs level by level.
class DerivedOracle final : public GroupOracle {
 public:
  explicit DerivedOracle(OraclePtr base);

  const OraclePtr& base() const { return base_; }
  const GraphContext& base_graph() const { return graph_; }

  int rank() const override { return base_->rank(); }
  std::string name() const override { return "derived(" + base_->name() + ")"; }

  VertexKey key(const Word& w) const override;
  Word representative(const VertexKey& k) const override;
  bool is_valid_key(const VertexKey& k) const override;
  std::string describe(const VertexKey& k) const override;

  bool has_power_problem() const override { return true; }
  VertexKey identity_key() const override;
  bool is_trivial(const Word& w) const override;

  std::vector<VertexKey> trace(const VertexKey& start, const Word& w) const override;
  VertexKey right_multiply(const VertexKey& start, const Word& w) const override;
  VertexKey left_multiply(const Word& g, const VertexKey& k) const override;

  std::optional<std::int64_t> power_exponent(const Word& u, const Word& v) const override;
  // F/N' is torsion free.
  std::optional<std::int64_t> order(const Word& g) const override;
  std::optional<Word> conjugator(const Word& u, const Word& v) const override;

  // Flow of w on Cay(X;N).
  FlowMap flow(const Word& w) const;
  VertexKey encode(const VertexKey& image, const FlowMap& flow) const;
  std::pair<VertexKey, FlowMap> decode(const VertexKey& k) const;

 private:
  OraclePtr base_;
  GraphContext graph_;
};

OraclePtr make_derived_oracle(OraclePtr base);

// F/F^(d): free abelian for d = 1, otherwise the derived oracle of degree d-1.
OraclePtr make_free_solvable(int n, int d);

// Sch(X;<N,u>) over a base oracle for F/N.
class SchreierContext {
 public:
  SchreierContext(OraclePtr base, Word u);

  const GraphContext& graph() const { return graph_; }
  const Word& u() const { return graph_.subgroup_word(); }
  VertexKey coset_key(const VertexKey& cayley_key) const { return graph_.vertex(cayley_key); }
  // Flow of w traced from the coset of `start`.
  FlowMap trace_flow(const Word& w, const VertexKey& start) const { return flow_of(graph_, w, start); }
  FlowMap trace_flow(const Word& w) const { return flow_of(graph_, w); }

 private:
  GraphContext graph_;
};

SchreierContext make_schreier(const OraclePtr& base, const Word& u);

// w = 1 in F/N' iff the Cayley flow of w vanishes.
bool wp_derived(const OraclePtr& base, const Word& w);

// v = u^k in F/N'. Tries k = 0, 1, -1, ..., |v|, -|v|; the answer is unique
// when u is nontrivial. For trivial u returns 0 iff v is trivial.
std::optional<std::int64_t> pp_derived(const OraclePtr& base, const Word& u, const Word& v);

// Some c with c^-1 u c = v in F/N', or nullopt. Every returned conjugator
// has been verified with wp_derived.
std::optional<Word> cp_derived(const OraclePtr& base, const Word& u, const Word& v);

}  // namespace magnus
