#include "magnus/derived.hpp"

#include <map>
#include <stdexcept>

#include "magnus/errors.hpp"

namespace magnus {

namespace {

// Layout: [|image|, image..., #entries, (|tail|, tail..., generator, value)...]
void append_key(std::vector<std::int64_t>& out, const VertexKey& k) {
  out.push_back(static_cast<std::int64_t>(k.size()));
  out.insert(out.end(), k.data().begin(), k.data().end());
}

class KeyReader {
 public:
  explicit KeyReader(std::span<const std::int64_t> data) : data_(data) {}

  std::int64_t next() {
    if (pos_ >= data_.size()) throw PreconditionError("truncated derived vertex key");
    return data_[pos_++];
  }
  VertexKey next_key() {
    const std::int64_t len = next();
    if (len < 0 || static_cast<std::size_t>(len) > data_.size() - pos_)
      throw PreconditionError("malformed derived vertex key");
    VertexKey k(std::vector<std::int64_t>(data_.begin() + static_cast<std::ptrdiff_t>(pos_),
                                          data_.begin() + static_cast<std::ptrdiff_t>(pos_) + len));
    pos_ += static_cast<std::size_t>(len);
    return k;
  }
  bool done() const { return pos_ == data_.size(); }

 private:
  std::span<const std::int64_t> data_;
  std::size_t pos_ = 0;
};

void add_step(FlowMap& f, const Letter& l, const VertexKey& before, const VertexKey& after) {
  if (l.sign > 0)
    f.add(Edge{before, l.index}, 1);
  else
    f.add(Edge{after, l.index}, -1);
}

}  // namespace

DerivedOracle::DerivedOracle(OraclePtr base) : base_(std::move(base)), graph_(GraphContext::cayley(base_)) {}

VertexKey DerivedOracle::encode(const VertexKey& image, const FlowMap& f) const {
  std::vector<std::int64_t> out;
  append_key(out, image);
  out.push_back(static_cast<std::int64_t>(f.size()));
  for (const auto& [e, v] : f.entries()) {
    append_key(out, e.tail);
    out.push_back(e.generator);
    out.push_back(v);
  }
  return VertexKey(std::move(out));
}

std::pair<VertexKey, FlowMap> DerivedOracle::decode(const VertexKey& k) const {
  KeyReader r(k.data());
  VertexKey image = r.next_key();
  const std::int64_t n = r.next();
  if (n < 0) throw PreconditionError("malformed derived vertex key");
  FlowMap f(graph_.id());
  for (std::int64_t i = 0; i < n; ++i) {
    VertexKey tail = r.next_key();
    const auto gen = r.next();
    const auto value = r.next();
    if (gen < 1 || gen > rank() || value == 0) throw PreconditionError("malformed derived vertex key");
    f.add(Edge{std::move(tail), static_cast<int>(gen)}, value);
  }
  if (!r.done() || f.size() != static_cast<std::size_t>(n)) throw PreconditionError("malformed derived vertex key");
  return {std::move(image), std::move(f)};
}

FlowMap DerivedOracle::flow(const Word& w) const { return flow_along(graph_, w, base_->prefix_keys(w)); }

VertexKey DerivedOracle::key(const Word& w) const {
  const auto path = base_->prefix_keys(w);
  return encode(path.back(), flow_along(graph_, w, path));
}

VertexKey DerivedOracle::identity_key() const { return encode(base_->identity_key(), FlowMap(graph_.id())); }

bool DerivedOracle::is_trivial(const Word& w) const {
  // An empty flow forces a trivial image, since p_w then has no net flow at the root.
  return flow(w).empty();
}

Word DerivedOracle::representative(const VertexKey& k) const {
  const auto [image, f] = decode(k);
  const Word to_image = base_->representative(image);
  const FlowMap loop = f - flow_of(graph_, to_image);
  return free_reduce(realize_circulation(graph_, loop) * to_image);
}

bool DerivedOracle::is_valid_key(const VertexKey& k) const {
  try {
    const auto [image, f] = decode(k);
    if (!base_->is_valid_key(image)) return false;
    for (const auto& [e, v] : f.entries())
      if (!base_->is_valid_key(e.tail)) return false;
    const VertexKey root = base_->identity_key();
    return net_flow(graph_, f) == GroupRingElement::delta(root) - GroupRingElement::delta(image);
  } catch (const std::invalid_argument&) {
    return false;
  }
}

std::string DerivedOracle::describe(const VertexKey& k) const {
  const auto s = format_word(representative(k));
  return "[" + (s.empty() ? std::string("1") : s) + "]";
}

std::vector<VertexKey> DerivedOracle::trace(const VertexKey& start, const Word& w) const {
  auto [image, f] = decode(start);
  const auto path = base_->trace(image, w);
  std::vector<VertexKey> keys;
  keys.reserve(w.size() + 1);
  keys.push_back(start);
  for (std::size_t j = 0; j < w.size(); ++j) {
    add_step(f, w[j], path[j], path[j + 1]);
    keys.push_back(encode(path[j + 1], f));
  }
  return keys;
}

VertexKey DerivedOracle::right_multiply(const VertexKey& start, const Word& w) const {
  auto [image, f] = decode(start);
  const auto path = base_->trace(image, w);
  for (std::size_t j = 0; j < w.size(); ++j) add_step(f, w[j], path[j], path[j + 1]);
  return encode(path.back(), f);
}

VertexKey DerivedOracle::left_multiply(const Word& g, const VertexKey& k) const {
  // (g, pi_g)(h, pi) = (g h, pi_g + g pi)
  const auto [image, f] = decode(k);
  return encode(base_->left_multiply(g, image), flow(g) + shift(graph_, g, f));
}

std::optional<std::int64_t> DerivedOracle::power_exponent(const Word& u, const Word& v) const {
  const Word ru = free_reduce(u);
  const Word rv = free_reduce(v);
  if (is_trivial(ru)) {
    if (is_trivial(rv)) return 0;
    return std::nullopt;
  }
  const FlowMap target = flow(rv);
  const VertexKey target_image = base_->key(rv);
  if (target.empty() && target_image == base_->identity_key()) return 0;
  // Both walks advance in place; the flow comparison runs only when the
  // images agree.
  struct Walk {
    VertexKey image;
    FlowMap flow;
  };
  Walk pos{base_->identity_key(), FlowMap(graph_.id())};
  Walk neg = pos;
  const Word ru_inv = invert(ru);
  auto advance = [&](Walk& walk, const Word& step) {
    const auto path = base_->trace(walk.image, step);
    for (std::size_t j = 0; j < step.size(); ++j) add_step(walk.flow, step[j], path[j], path[j + 1]);
    walk.image = path.back();
    return walk.image == target_image && walk.flow == target;
  };
  // |k| <= |v| because ||pi_{u^k}|| >= |k| while ||pi_v|| <= |v|.
  for (std::int64_t k = 1; k <= static_cast<std::int64_t>(rv.size()); ++k) {
    if (advance(pos, ru)) return k;
    if (advance(neg, ru_inv)) return -k;
  }
  return std::nullopt;
}

std::optional<std::int64_t> DerivedOracle::order(const Word& g) const {
  if (is_trivial(g)) return 1;
  return std::nullopt;
}

std::optional<Word> DerivedOracle::conjugator(const Word& u, const Word& v) const { return cp_derived(base_, u, v); }

OraclePtr make_derived_oracle(OraclePtr base) {
  if (!base) throw PreconditionError("derived oracle needs a base oracle");
  return std::make_shared<DerivedOracle>(std::move(base));
}

OraclePtr make_free_solvable(int n, int d) {
  if (d < 1) throw ValidationError("free solvable degree must be at least 1");
  OraclePtr g = make_free_abelian(n);
  for (int level = 2; level <= d; ++level) g = make_derived_oracle(std::move(g));
  return g;
}

// ---------------------------------------------------------------------------

SchreierContext::SchreierContext(OraclePtr base, Word u)
    : graph_([&] {
        if (!base) throw PreconditionError("Schreier context needs a base oracle");
        if (!base->has_power_problem())
          throw MissingCapability(base->name() + ": Schreier graphs need the power problem");
        Word ru = free_reduce(u);
        std::shared_ptr<const CosetReducer> reducer = base->coset_reducer(ru);
        return GraphContext::schreier(base, std::move(ru), std::move(reducer));
      }()) {}

SchreierContext make_schreier(const OraclePtr& base, const Word& u) { return SchreierContext(base, u); }

bool wp_derived(const OraclePtr& base, const Word& w) { return DerivedOracle(base).is_trivial(w); }

std::optional<std::int64_t> pp_derived(const OraclePtr& base, const Word& u, const Word& v) {
  return DerivedOracle(base).power_exponent(u, v);
}

namespace {

// Turns a candidate c satisfying the geometric conditions into an actual
// conjugator m c in F/N' with m in N. The defect E = pi_{uc} - pi_{cv} is a
// circulation in the image of (1-u); solving (1-u) sigma = E orbit by orbit,
// repairing sigma into a circulation and realizing it as a word m in N gives
// mu(m c)^-1 mu(u) mu(m c) = mu(v).
Word lift_conjugator(const GraphContext& cayley, const SchreierContext& schreier, const Word& u, const Word& v,
                     const Word& c) {
  const GroupOracle& base = cayley.oracle();
  const FlowMap defect = flow_of(cayley, free_reduce(u * c)) - flow_of(cayley, free_reduce(c * v));
  if (defect.empty()) return c;
  if (base.is_trivial(u)) throw std::logic_error("cp_derived: nonzero defect for u in N");

  const auto order = base.order(u);

  // Group defect entries by Schreier edge; within a group, tails form an
  // orbit u^j t0.
  std::map<Edge, std::vector<std::pair<VertexKey, std::int64_t>>> fibers;
  for (const auto& [e, value] : defect.entries())
    fibers[Edge{schreier.coset_key(e.tail), e.generator}].emplace_back(e.tail, value);

  FlowMap sigma(cayley.id());
  for (const auto& [schreier_edge, entries] : fibers) {
    const VertexKey& t0 = entries.front().first;
    const Word t0_inv = invert(base.representative(t0));
    std::map<std::int64_t, std::int64_t> by_position;
    std::int64_t total = 0;
    for (const auto& [tail, value] : entries) {
      const auto j = base.power_exponent(u, free_reduce(base.representative(tail) * t0_inv));
      if (!j) throw std::logic_error("cp_derived: defect tail outside the expected coset");
      std::int64_t pos = *j;
      if (order) pos = ((pos % *order) + *order) % *order;
      by_position[pos] += value;
      total += value;
    }
    if (total != 0) throw std::logic_error("cp_derived: defect not in the image of (1-u)");

    const std::int64_t first = order ? 0 : by_position.begin()->first;
    const std::int64_t last = order ? *order - 1 : by_position.rbegin()->first;
    std::int64_t running = 0;
    for (std::int64_t j = first; j < last; ++j) {
      if (auto it = by_position.find(j); it != by_position.end()) running += it->second;
      if (running != 0) sigma.add(Edge{base.left_multiply(power(u, j), t0), schreier_edge.generator}, running);
    }
  }
  if (sigma - shift(cayley, u, sigma) != defect) throw std::logic_error("cp_derived: failed to invert (1-u)");

  const FlowMap circulation = repair_circulation(cayley, u, sigma);
  return free_reduce(realize_circulation(cayley, circulation) * c);
}

}  // namespace

std::optional<Word> cp_derived(const OraclePtr& base, const Word& u, const Word& v) {
  const DerivedOracle derived(base);
  const Word ru = free_reduce(u);
  const Word rv = free_reduce(v);
  const bool u_trivial = derived.is_trivial(ru);
  const bool v_trivial = derived.is_trivial(rv);
  if (u_trivial && v_trivial) return Word{};
  if (u_trivial != v_trivial) return std::nullopt;

  const SchreierContext schreier = make_schreier(base, ru);
  const FlowMap pi_u = schreier.trace_flow(ru);
  if (pi_u.empty()) throw std::logic_error("cp_derived: Schreier flow of a nontrivial u vanished");

  // First step of the path of u crossing an edge with nonzero Schreier flow.
  const auto path = base->prefix_keys(ru);
  std::size_t step = 0;
  for (std::size_t i = 1; i <= ru.size() && step == 0; ++i) {
    const Letter& l = ru[i - 1];
    const VertexKey tail = schreier.coset_key(l.sign > 0 ? path[i - 1] : path[i]);
    if (pi_u.at(Edge{tail, l.index}) != 0) step = i;
  }
  if (step == 0) throw std::logic_error("cp_derived: no edge of u carries Schreier flow");

  // Among the accepted candidates the shortest is lifted (ties: smallest j).
  const Word u_i = ru.prefix(step);
  const Word v_inv = invert(rv);
  std::optional<Word> best;
  for (std::size_t j = 0; j <= rv.size(); ++j) {
    const Word c = free_reduce(u_i * invert(rv.prefix(j)));
    if (best && c.size() >= best->size()) continue;
    if (!base->is_trivial(free_reduce(invert(c) * ru * c * v_inv))) continue;
    if (schreier.trace_flow(rv, base->key(c)) != pi_u) continue;
    best = c;
  }
  if (best) {
    const Word conj = lift_conjugator(derived.base_graph(), schreier, ru, rv, *best);
    if (!derived.is_trivial(free_reduce(invert(conj) * ru * conj * v_inv)))
      throw std::logic_error("cp_derived: conjugator failed certification");
    return conj;
  }
  return std::nullopt;
}

}  // namespace magnus
