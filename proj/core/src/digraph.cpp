#include "magnus/digraph.hpp"

#include <deque>
#include <numeric>
#include <set>

#include "magnus/errors.hpp"

namespace magnus {

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
  std::vector<std::size_t> parent;
};

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

bool FiniteXDigraph::is_folded() const {
  std::set<std::pair<std::size_t, int>> out, in;
  for (const auto& e : edges) {
    if (!out.emplace(e.tail, e.generator).second) return false;
    if (!in.emplace(e.head, e.generator).second) return false;
  }
  return true;
}

bool FiniteXDigraph::is_connected() const {
  if (vertex_count == 0) return true;
  DisjointSets ds(vertex_count);
  std::size_t components = vertex_count;
  for (const auto& e : edges)
    if (ds.unite(e.tail, e.head)) --components;
  return components == 1;
}

std::size_t graph_rank(const FiniteXDigraph& g) {
  for (const auto& e : g.edges)
    if (e.tail >= g.vertex_count || e.head >= g.vertex_count) throw ValidationError("edge endpoint out of range");
  if (!g.is_connected()) throw ValidationError("graph_rank: graph is not connected");
  if (g.vertex_count == 0) return 0;
  return g.edges.size() - (g.vertex_count - 1);
}

std::optional<std::size_t> girth(const FiniteXDigraph& g) {
  // Underlying undirected multigraph: loops give 1, parallel edges give 2.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(g.vertex_count);  // (neighbor, edge id)
  std::optional<std::size_t> best;
  for (std::size_t id = 0; id < g.edges.size(); ++id) {
    const auto& e = g.edges[id];
    if (e.tail == e.head) return 1;
    adj[e.tail].emplace_back(e.head, id);
    adj[e.head].emplace_back(e.tail, id);
  }
  constexpr std::size_t unseen = static_cast<std::size_t>(-1);
  for (std::size_t s = 0; s < g.vertex_count; ++s) {
    std::vector<std::size_t> dist(g.vertex_count, unseen), via(g.vertex_count, unseen);
    std::deque<std::size_t> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      if (best && 2 * dist[v] >= *best) break;
      for (const auto& [w, id] : adj[v]) {
        if (id == via[v]) continue;
        if (dist[w] == unseen) {
          dist[w] = dist[v] + 1;
          via[w] = id;
          queue.push_back(w);
        } else {
          const std::size_t len = dist[v] + dist[w] + 1;
          if (!best || len < *best) best = len;
        }
      }
    }
  }
  return best;
}

FiniteXDigraph cayley_graph(const GroupOracle& oracle, std::size_t max_vertices) {
  std::map<VertexKey, std::size_t> index;
  std::vector<VertexKey> keys;
  FiniteXDigraph g;
  const VertexKey id = oracle.identity_key();
  index.emplace(id, 0);
  keys.push_back(id);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (int x = 1; x <= oracle.rank(); ++x) {
      const VertexKey head = oracle.trace(keys[i], Word{Letter{x, 1}}).back();
      auto [it, inserted] = index.try_emplace(head, keys.size());
      if (inserted) {
        if (keys.size() >= max_vertices) throw CapExceeded("cayley_graph: too many vertices");
        keys.push_back(head);
      }
      g.edges.push_back({i, it->second, x});
    }
  }
  // Groups are closed under x^-1, so positive edges reach every element.
  g.vertex_count = keys.size();
  g.root = 0;
  for (const auto& k : keys) g.vertex_labels.push_back(oracle.describe(k));
  return g;
}

// ---------------------------------------------------------------------------

SupportGraph build_support_graph(const GroupOracle& oracle, const Word& w) {
  SupportGraph g;
  std::vector<VertexKey> path;
  if (oracle.has_fast_keys()) {
    path = oracle.prefix_keys(w);
  } else {
    // Pairwise merge of prefix classes.
    std::vector<Word> prefixes;
    prefixes.reserve(w.size() + 1);
    for (std::size_t j = 0; j <= w.size(); ++j) prefixes.push_back(w.prefix(j));
    DisjointSets ds(prefixes.size());
    for (std::size_t i = 0; i < prefixes.size(); ++i)
      for (std::size_t j = i + 1; j < prefixes.size(); ++j)
        if (ds.find(i) != ds.find(j) && oracle.is_trivial(free_reduce(prefixes[i] * invert(prefixes[j]))))
          ds.unite(i, j);
    for (std::size_t j = 0; j < prefixes.size(); ++j) path.push_back(VertexKey{static_cast<std::int64_t>(ds.find(j))});
  }

  g.root_ = path.front();
  for (std::size_t j = 0; j < path.size(); ++j) g.vertices_.try_emplace(path[j], w.prefix(j));
  for (std::size_t j = 0; j < w.size(); ++j) {
    const Letter& l = w[j];
    const VertexKey& tail = l.sign > 0 ? path[j] : path[j + 1];
    const VertexKey& head = l.sign > 0 ? path[j + 1] : path[j];
    g.edges_.try_emplace(Edge{tail, l.index}, head);
    g.incoming_.try_emplace(Edge{head, l.index}, tail);
  }
  return g;
}

std::optional<std::vector<VertexKey>> SupportGraph::follow(const Word& w) const {
  std::vector<VertexKey> path{root_};
  for (const auto& l : w) {
    const auto& table = l.sign > 0 ? edges_ : incoming_;
    const auto it = table.find(Edge{path.back(), l.index});
    if (it == table.end()) return std::nullopt;
    path.push_back(it->second);
  }
  return path;
}

FlowMap SupportGraph::flow(const Word& w) const {
  const auto path = follow(w);
  if (!path) throw PreconditionError("word cannot be traced in the support graph");
  FlowMap f;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const Letter& l = w[j];
    if (l.sign > 0)
      f.add(Edge{(*path)[j], l.index}, 1);
    else
      f.add(Edge{(*path)[j + 1], l.index}, -1);
  }
  return f;
}

FiniteXDigraph SupportGraph::to_finite() const {
  FiniteXDigraph g;
  std::map<VertexKey, std::size_t> index;
  for (const auto& [k, rep] : vertices_) {
    index.emplace(k, g.vertex_count++);
    g.vertex_labels.push_back(format_word(rep));
  }
  for (const auto& [e, head] : edges_) g.edges.push_back({index.at(e.tail), index.at(head), e.generator});
  g.root = index.at(root_);
  return g;
}

// ---------------------------------------------------------------------------

void write_dot(std::ostream& os, const FiniteXDigraph& g, const std::map<std::size_t, std::int64_t>* edge_values) {
  os << "digraph X {\n";
  for (std::size_t v = 0; v < g.vertex_count; ++v) {
    std::string label = v < g.vertex_labels.size() ? g.vertex_labels[v] : std::to_string(v);
    if (label.empty()) label = "1";
    os << "  v" << v << " [label=\"" << dot_escape(label) << "\"";
    if (g.root && *g.root == v) os << ", shape=doublecircle";
    os << "];\n";
  }
  for (std::size_t id = 0; id < g.edges.size(); ++id) {
    const auto& e = g.edges[id];
    os << "  v" << e.tail << " -> v" << e.head << " [label=\"x" << e.generator;
    if (edge_values) {
      const auto it = edge_values->find(id);
      os << ": " << (it == edge_values->end() ? 0 : it->second);
    }
    os << "\"];\n";
  }
  os << "}\n";
}

void write_dot(std::ostream& os, const SupportGraph& g, const GroupOracle& oracle, const FlowMap* flow) {
  FiniteXDigraph fin;
  std::map<VertexKey, std::size_t> index;
  for (const auto& [k, rep] : g.vertices()) {
    index.emplace(k, fin.vertex_count++);
    fin.vertex_labels.push_back(oracle.has_fast_keys() ? oracle.describe(k) : format_word(rep));
  }
  fin.root = index.at(g.root());
  std::map<std::size_t, std::int64_t> values;
  for (const auto& [e, head] : g.edges()) {
    if (flow) values[fin.edges.size()] = flow->at(e);
    fin.edges.push_back({index.at(e.tail), index.at(head), e.generator});
  }
  write_dot(os, fin, flow ? &values : nullptr);
}

}  // namespace magnus
