#include "magnus/flows.hpp"

#include <atomic>
#include <set>

#include "magnus/checked.hpp"
#include "magnus/errors.hpp"

namespace magnus {

namespace {

std::uint64_t next_context_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

void require_cayley(const GraphContext& ctx, const char* op) {
  if (!ctx.is_cayley()) throw ContextMismatch(std::string(op) + " requires a Cayley graph context");
}

}  // namespace

GraphContext::GraphContext(Mode mode, OraclePtr oracle, Word u, std::shared_ptr<const CosetReducer> reducer)
    : mode_(mode), oracle_(std::move(oracle)), u_(std::move(u)), reducer_(std::move(reducer)), id_(next_context_id()) {
  if (!oracle_) throw PreconditionError("graph context needs an oracle");
}

GraphContext GraphContext::cayley(OraclePtr oracle) { return GraphContext(Mode::cayley, std::move(oracle), {}, nullptr); }

GraphContext GraphContext::schreier(OraclePtr oracle, Word u, std::shared_ptr<const CosetReducer> reducer) {
  if (!reducer) throw PreconditionError("Schreier context needs a coset reducer");
  return GraphContext(Mode::schreier, std::move(oracle), std::move(u), std::move(reducer));
}

VertexKey GraphContext::vertex(const VertexKey& cayley_key) const {
  return mode_ == Mode::cayley ? cayley_key : reducer_->coset_key(cayley_key);
}

VertexKey GraphContext::head(const Edge& e) const {
  return vertex(oracle_->right_multiply(e.tail, Word{Letter{e.generator, 1}}));
}

// ---------------------------------------------------------------------------

std::int64_t FlowMap::at(const Edge& e) const {
  const auto it = entries_.find(e);
  return it == entries_.end() ? 0 : it->second;
}

void FlowMap::add(const Edge& e, std::int64_t delta) {
  if (delta == 0) return;
  auto [it, inserted] = entries_.try_emplace(e, 0);
  it->second = checked_add(it->second, delta);
  if (it->second == 0) entries_.erase(it);
}

void FlowMap::check_context(const FlowMap& rhs) const {
  if (context_id_ != 0 && rhs.context_id_ != 0 && context_id_ != rhs.context_id_)
    throw ContextMismatch("flows belong to different graph contexts");
}

FlowMap& FlowMap::operator+=(const FlowMap& rhs) {
  check_context(rhs);
  if (context_id_ == 0) context_id_ = rhs.context_id_;
  for (const auto& [e, v] : rhs.entries_) add(e, v);
  return *this;
}

FlowMap& FlowMap::operator-=(const FlowMap& rhs) {
  check_context(rhs);
  if (context_id_ == 0) context_id_ = rhs.context_id_;
  for (const auto& [e, v] : rhs.entries_) add(e, checked_neg(v));
  return *this;
}

FlowMap operator+(FlowMap lhs, const FlowMap& rhs) { return lhs += rhs; }
FlowMap operator-(FlowMap lhs, const FlowMap& rhs) { return lhs -= rhs; }

FlowMap operator-(const FlowMap& f) {
  FlowMap out(f.context_id_);
  for (const auto& [e, v] : f.entries_) out.entries_.emplace(e, checked_neg(v));
  return out;
}

FlowMap negate(const FlowMap& f) { return -f; }

FlowMap scale(const FlowMap& f, std::int64_t k) {
  FlowMap out(f.context_id());
  for (const auto& [e, v] : f.entries()) out.add(e, checked_mul(v, k));
  return out;
}

// ---------------------------------------------------------------------------

GroupRingElement GroupRingElement::delta(const VertexKey& k, std::int64_t coefficient) {
  GroupRingElement z;
  z.add(k, coefficient);
  return z;
}

std::int64_t GroupRingElement::at(const VertexKey& k) const {
  const auto it = coeffs_.find(k);
  return it == coeffs_.end() ? 0 : it->second;
}

void GroupRingElement::add(const VertexKey& k, std::int64_t delta) {
  if (delta == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(k, 0);
  it->second = checked_add(it->second, delta);
  if (it->second == 0) coeffs_.erase(it);
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& rhs) {
  for (const auto& [k, v] : rhs.coeffs_) add(k, v);
  return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& rhs) {
  for (const auto& [k, v] : rhs.coeffs_) add(k, checked_neg(v));
  return *this;
}

GroupRingElement operator+(GroupRingElement lhs, const GroupRingElement& rhs) { return lhs += rhs; }
GroupRingElement operator-(GroupRingElement lhs, const GroupRingElement& rhs) { return lhs -= rhs; }

// ---------------------------------------------------------------------------

FlowMap flow_along(const GraphContext& ctx, const Word& w, const std::vector<VertexKey>& path) {
  if (path.size() != w.size() + 1) throw PreconditionError("path must have |w|+1 vertices");
  FlowMap f(ctx.id());
  for (std::size_t j = 0; j < w.size(); ++j) {
    const Letter& l = w[j];
    if (l.sign > 0)
      f.add(Edge{ctx.vertex(path[j]), l.index}, 1);
    else
      f.add(Edge{ctx.vertex(path[j + 1]), l.index}, -1);
  }
  return f;
}

FlowMap flow_of(const GraphContext& ctx, const Word& w, const VertexKey& start) {
  if (!ctx.oracle().is_valid_key(start)) throw PreconditionError("start is not a valid vertex key");
  return flow_along(ctx, w, ctx.oracle().trace(start, w));
}

FlowMap flow_of(const GraphContext& ctx, const Word& w) { return flow_of(ctx, w, ctx.oracle().identity_key()); }

FlowMap shift(const GraphContext& ctx, const Word& g, const FlowMap& f) {
  require_cayley(ctx, "shift");
  if (g.empty()) return f;
  FlowMap out(f.context_id());
  for (const auto& [e, v] : f.entries()) out.add(Edge{ctx.oracle().left_multiply(g, e.tail), e.generator}, v);
  return out;
}

FlowMap shift_by_key(const GraphContext& ctx, const VertexKey& g, const FlowMap& f) {
  return shift(ctx, ctx.oracle().representative(g), f);
}

std::int64_t norm(const FlowMap& f) {
  std::int64_t n = 0;
  for (const auto& [e, v] : f.entries()) n = checked_add(n, v < 0 ? checked_neg(v) : v);
  return n;
}

GroupRingElement net_flow(const GraphContext& ctx, const FlowMap& f) {
  GroupRingElement z;
  for (const auto& [e, v] : f.entries()) {
    z.add(e.tail, v);
    z.add(ctx.head(e), checked_neg(v));
  }
  return z;
}

bool is_circulation(const GraphContext& ctx, const FlowMap& f) { return net_flow(ctx, f).empty(); }

std::int64_t augment(const GroupRingElement& z) {
  std::int64_t s = 0;
  for (const auto& [k, v] : z.coefficients()) s = checked_add(s, v);
  return s;
}

GroupRingElement shift(const GraphContext& ctx, const Word& g, const GroupRingElement& z) {
  require_cayley(ctx, "shift");
  GroupRingElement out;
  for (const auto& [k, v] : z.coefficients()) out.add(ctx.oracle().left_multiply(g, k), v);
  return out;
}

FlowMap telescope(const GraphContext& ctx, const GroupRingElement& z) {
  require_cayley(ctx, "telescope");
  if (augment(z) != 0) throw PreconditionError("telescope: augmentation of z is not zero");
  // z = sum a_g (g - 1) and g - 1 = -N(pi_r) for any word r representing g.
  FlowMap out(ctx.id());
  for (const auto& [k, a] : z.coefficients()) {
    const Word r = ctx.oracle().representative(k);
    out -= scale(flow_of(ctx, r), a);
  }
  return out;
}

FlowMap repair_circulation(const GraphContext& ctx, const Word& g, const FlowMap& f) {
  require_cayley(ctx, "repair_circulation");
  const GroupOracle& oracle = ctx.oracle();
  if (oracle.is_trivial(g)) throw PreconditionError("repair_circulation: g is trivial in F/N");
  if (!is_circulation(ctx, f - shift(ctx, g, f)))
    throw PreconditionError("repair_circulation: (1-g)f is not a circulation");

  const auto k = oracle.order(g);
  if (!k) {
    // |g| infinite: N(f) is g-invariant with finite support, hence zero.
    if (!is_circulation(ctx, f)) throw PreconditionError("repair_circulation: inconsistent input");
    return f;
  }

  // N(f) is constant on the orbits {g^j t}; collect one value per orbit.
  const GroupRingElement nf = net_flow(ctx, f);
  GroupRingElement quotient;
  std::set<VertexKey> seen;
  for (const auto& [t, value] : nf.coefficients()) {
    if (seen.contains(t)) continue;
    VertexKey rep = t;
    VertexKey cur = t;
    for (std::int64_t j = 0; j < *k; ++j) {
      if (nf.at(cur) != value) throw PreconditionError("repair_circulation: N(f) is not g-invariant");
      seen.insert(cur);
      rep = std::min(rep, cur);
      cur = oracle.left_multiply(g, cur);
    }
    quotient.add(rep, value);
  }
  const FlowMap partial = telescope(ctx, quotient);

  FlowMap result = f;
  Word gj;
  for (std::int64_t j = 0; j < *k; ++j) {
    result -= shift(ctx, gj, partial);
    gj = free_reduce(g * gj);
  }
  return result;
}

Word realize_circulation(const GraphContext& ctx, const FlowMap& f) {
  require_cayley(ctx, "realize_circulation");
  if (!is_circulation(ctx, f)) throw PreconditionError("realize_circulation: flow is not a circulation");
  // prod over edges (r_t x_i r_{t x_i}^-1)^a; the r-terms cancel because every
  // vertex has zero net flow.
  Word m;
  for (const auto& [e, a] : f.entries()) {
    Word loop = ctx.oracle().representative(e.tail);
    loop.push_back(Letter{e.generator, 1});
    loop *= invert(ctx.oracle().representative(ctx.head(e)));
    m *= power(loop, a);
  }
  return free_reduce(m);
}

FlowMap project(const GraphContext& schreier, const FlowMap& cayley_flow) {
  FlowMap out(schreier.id());
  for (const auto& [e, v] : cayley_flow.entries()) out.add(Edge{schreier.vertex(e.tail), e.generator}, v);
  return out;
}

}  // namespace magnus
