#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "magnus/flows.hpp"
#include "magnus/oracle.hpp"

namespace magnus {

// Explicit finite inverse X-digraph. Only positive edges are listed; every
// edge tail --x_i--> head implies head --x_i^-1--> tail.
struct FiniteXDigraph {
  struct PositiveEdge {
    std::size_t tail;
    std::size_t head;
    int generator;
  };

  std::size_t vertex_count = 0;
  std::vector<PositiveEdge> edges;
  std::optional<std::size_t> root;
  std::vector<std::string> vertex_labels;  // optional, for DOT output

  bool is_folded() const;
  bool is_connected() const;
};

// Connected X-digraph of the edges traversed by the path of a word from the
// root of Cay(X;N). Vertices are oracle-canonical (so the graph is folded)
// and carry the first prefix of w reaching them as representative word.
class SupportGraph {
 public:
  const VertexKey& root() const { return root_; }
  const std::map<VertexKey, Word>& vertices() const { return vertices_; }
  // positive edge (tail, generator) -> head
  const std::map<Edge, VertexKey>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  // Follows w from the root through the graph; nullopt if w leaves the graph.
  std::optional<std::vector<VertexKey>> follow(const Word& w) const;
  // Flow of w computed purely from the graph's edges.
  FlowMap flow(const Word& w) const;

  FiniteXDigraph to_finite() const;

 private:
  friend SupportGraph build_support_graph(const GroupOracle& oracle, const Word& w);

  VertexKey root_;
  std::map<VertexKey, Word> vertices_;
  std::map<Edge, VertexKey> edges_;
  std::map<Edge, VertexKey> incoming_;  // (head, generator) -> tail
};

// Vertices are the classes of all prefixes of w. With fast oracle keys the
// classes are the oracle keys; otherwise prefixes are merged by pairwise
// word-problem calls (|w|^2 of them) and keyed by class index.
SupportGraph build_support_graph(const GroupOracle& oracle, const Word& w);

// |E+| - (|V| - 1). Throws ValidationError on a disconnected graph.
std::size_t graph_rank(const FiniteXDigraph& g);

// Length of a shortest nonempty reduced cycle; nullopt when acyclic.
std::optional<std::size_t> girth(const FiniteXDigraph& g);

// Full Cayley graph of a finite oracle, discovered from the identity.
FiniteXDigraph cayley_graph(const GroupOracle& finite_oracle, std::size_t max_vertices = 100000);

// Graphviz output; `flow` values (when given) label the edges.
void write_dot(std::ostream& os, const FiniteXDigraph& g, const std::map<std::size_t, std::int64_t>* edge_values = nullptr);
void write_dot(std::ostream& os, const SupportGraph& g, const GroupOracle& oracle, const FlowMap* flow = nullptr);

}  // namespace magnus
