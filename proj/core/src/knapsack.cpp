#include "magnus/knapsack.hpp"

#include <functional>
#include <limits>

#include "magnus/derived.hpp"
#include "magnus/errors.hpp"

namespace magnus {

void ZoeInstance::validate() const {
  if (matrix.empty()) throw ValidationError("ZOE matrix must have at least one row");
  const std::size_t m = matrix.front().size();
  if (m == 0) throw ValidationError("ZOE matrix must have at least one column");
  for (const auto& row : matrix) {
    if (row.size() != m) throw ValidationError("ZOE matrix rows must have equal length");
    for (int v : row)
      if (v != 0 && v != 1) throw ValidationError("ZOE matrix entries must be 0 or 1");
  }
}

void AgpInstance::validate() const {
  if (vertices == 0) throw ValidationError("AGP graph needs at least one vertex");
  if (source >= vertices || sink >= vertices) throw ValidationError("AGP source/sink out of range");
  std::vector<std::size_t> indegree(vertices, 0);
  std::vector<std::vector<std::size_t>> out(vertices);
  for (const auto& e : edges) {
    if (e.from >= vertices || e.to >= vertices) throw ValidationError("AGP edge endpoint out of range");
    ++indegree[e.to];
    out[e.from].push_back(e.to);
  }
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < vertices; ++v)
    if (indegree[v] == 0) ready.push_back(v);
  std::size_t removed = 0;
  while (!ready.empty()) {
    const auto v = ready.back();
    ready.pop_back();
    ++removed;
    for (auto w : out[v])
      if (--indegree[w] == 0) ready.push_back(w);
  }
  if (removed != vertices) throw ValidationError("AGP graph has a directed cycle");
}

namespace {

void check_subset_cap(std::size_t k, std::size_t cap) {
  if (k > cap) throw CapExceeded("subset enumeration over " + std::to_string(k) + " items exceeds cap " + std::to_string(cap));
  if (k >= 63) throw CapExceeded("subset enumeration too large");
}

BitVector bits_of(std::uint64_t mask, std::size_t k) {
  BitVector e(k);
  for (std::size_t i = 0; i < k; ++i) e[i] = static_cast<int>((mask >> i) & 1U);
  return e;
}

}  // namespace

std::optional<BitVector> ssp_solve_brute(const GroupOracle& oracle, const std::vector<Word>& generators,
                                         const Word& target, std::size_t cap) {
  const std::size_t k = generators.size();
  check_subset_cap(k, cap);
  const Word target_inv = invert(target);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    Word w = target_inv;
    for (std::size_t i = 0; i < k; ++i)
      if ((mask >> i) & 1U) w *= generators[i];
    if (oracle.is_trivial(free_reduce(w))) return bits_of(mask, k);
  }
  return std::nullopt;
}

std::optional<BitVector> ssp_solve_brute(const SspInstance& inst, std::size_t cap) {
  check_subset_cap(inst.generators.size(), cap);
  const OraclePtr oracle = make_oracle(inst.group);
  return ssp_solve_brute(*oracle, inst.generators, inst.target, cap);
}

std::optional<BitVector> zoe_solve_brute(const ZoeInstance& z, std::size_t cap) {
  z.validate();
  const std::size_t m = z.columns();
  check_subset_cap(m, cap);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    bool ok = true;
    for (const auto& row : z.matrix) {
      int sum = 0;
      for (std::size_t j = 0; j < m; ++j)
        if ((mask >> j) & 1U) sum += row[j];
      if (sum != 1) {
        ok = false;
        break;
      }
    }
    if (ok) return bits_of(mask, m);
  }
  return std::nullopt;
}

CommutatorBasis commutator_basis(std::size_t count) {
  CommutatorBasis b;
  b.relator = Word{{1, 1}, {2, 1}, {1, -1}, {2, -1}};
  b.spacing = 2 * static_cast<std::int64_t>(b.relator.size()) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    Word c = Word::generator_power(1, b.spacing * static_cast<std::int64_t>(i));
    b.elements.push_back(free_reduce(c * b.relator * invert(c)));
    b.conjugators.push_back(std::move(c));
  }
  return b;
}

SspInstance zoe_to_ssp(const ZoeInstance& z, int rank) {
  z.validate();
  if (rank < 2) throw ValidationError("zoe_to_ssp needs rank at least 2");
  const CommutatorBasis basis = commutator_basis(z.rows());
  SspInstance inst;
  inst.group.kind = GroupKind::free_solvable;
  inst.group.rank = rank;
  inst.group.degree = 2;
  for (std::size_t j = 0; j < z.columns(); ++j) {
    Word g;
    for (std::size_t i = 0; i < z.rows(); ++i)
      if (z.matrix[i][j]) g *= basis.elements[i];
    inst.generators.push_back(free_reduce(g));
  }
  Word target;
  for (const auto& h : basis.elements) target *= h;
  inst.target = free_reduce(target);
  return inst;
}

std::optional<std::vector<std::size_t>> agp_solve_brute(const AgpInstance& inst, const GroupOracle& oracle,
                                                        std::size_t cap) {
  inst.validate();
  std::vector<std::vector<std::size_t>> out(inst.vertices);
  for (std::size_t id = 0; id < inst.edges.size(); ++id) out[inst.edges[id].from].push_back(id);

  // Count source->sink paths (memoized over the DAG) before enumerating.
  constexpr auto saturated = std::numeric_limits<std::size_t>::max();
  std::vector<std::optional<std::size_t>> paths_from(inst.vertices);
  std::function<std::size_t(std::size_t)> count = [&](std::size_t v) -> std::size_t {
    if (paths_from[v]) return *paths_from[v];
    std::size_t total = v == inst.sink ? 1 : 0;
    for (auto id : out[v]) {
      const std::size_t sub = count(inst.edges[id].to);
      total = sub > saturated - total ? saturated : total + sub;
    }
    paths_from[v] = total;
    return total;
  };
  if (count(inst.source) > cap) throw CapExceeded("AGP path count exceeds cap " + std::to_string(cap));

  const Word target_inv = invert(inst.target);
  std::vector<std::size_t> stack;
  std::optional<std::vector<std::size_t>> found;
  std::function<void(std::size_t, const Word&)> dfs = [&](std::size_t v, const Word& label) {
    if (found) return;
    if (v == inst.sink && oracle.is_trivial(free_reduce(target_inv * label))) {
      found = stack;
      return;
    }
    for (auto id : out[v]) {
      stack.push_back(id);
      dfs(inst.edges[id].to, label * inst.edges[id].label);
      stack.pop_back();
      if (found) return;
    }
  };
  dfs(inst.source, Word{});
  return found;
}

}  // namespace magnus
