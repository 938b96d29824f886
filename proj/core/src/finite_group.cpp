#include "magnus/finite_group.hpp"

#include <array>
#include <deque>
#include <map>
#include "json.hpp"

#include "magnus/errors.hpp"

namespace magnus {

namespace {
std::size_t idx(int i) { return static_cast<std::size_t>(i); }
}  // namespace

void MulTable::validate() const {
  if (order < 1) throw ValidationError("group order must be positive");
  const auto m = static_cast<std::size_t>(order);
  if (table.size() != m) throw ValidationError("table must have `order` rows");
  for (const auto& row : table) {
    if (row.size() != m) throw ValidationError("table must be square");
    for (int v : row)
      if (v < 0 || v >= order) throw ValidationError("table entry out of range");
  }
  if (identity < 0 || identity >= order) throw ValidationError("identity index out of range");
  if (generators.empty()) throw ValidationError("at least one generator is required");
  for (int g : generators)
    if (g < 0 || g >= order) throw ValidationError("generator index out of range");

  for (int a = 0; a < order; ++a) {
    if (table[idx(identity)][idx(a)] != a || table[idx(a)][idx(identity)] != a)
      throw ValidationError("identity element does not act trivially on " + std::to_string(a));
  }
  for (int a = 0; a < order; ++a) {
    bool found = false;
    for (int b = 0; b < order && !found; ++b)
      found = table[idx(a)][idx(b)] == identity && table[idx(b)][idx(a)] == identity;
    if (!found) throw ValidationError("element " + std::to_string(a) + " has no inverse");
  }
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      for (int c = 0; c < order; ++c) {
        const int ab = table[idx(a)][idx(b)];
        const int bc = table[idx(b)][idx(c)];
        if (table[idx(ab)][idx(c)] != table[idx(a)][idx(bc)])
          throw ValidationError("table is not associative");
      }
}

namespace {

// Closes a set of permutations under composition; element 0 is the identity.
MulTable permutation_group(const std::vector<std::vector<int>>& gens) {
  const std::size_t deg = gens.front().size();
  std::vector<int> id(deg);
  for (std::size_t i = 0; i < deg; ++i) id[i] = static_cast<int>(i);
  std::vector<std::vector<int>> elems{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  // p*q acts as "first p, then q".
  auto compose = [&](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(deg);
    for (std::size_t i = 0; i < deg; ++i) r[i] = q[idx(p[i])];
    return r;
  };
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens) {
      auto p = compose(elems[i], g);
      if (!index.contains(p)) {
        index.emplace(p, static_cast<int>(elems.size()));
        elems.push_back(p);
      }
    }
  }
  MulTable t;
  t.order = static_cast<int>(elems.size());
  t.identity = 0;
  t.table.assign(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) t.table[a][b] = index.at(compose(elems[a], elems[b]));
  for (const auto& g : gens) t.generators.push_back(index.at(g));
  return t;
}

}  // namespace

MulTable symmetric_group_s3() { return permutation_group({{1, 2, 0}, {1, 0, 2}}); }

MulTable cyclic_group(int m) { return cyclic_product({m}); }

MulTable cyclic_product(const std::vector<int>& orders) {
  if (orders.empty()) throw ValidationError("need at least one cyclic factor");
  int total = 1;
  for (int o : orders) {
    if (o < 1) throw ValidationError("cyclic factor order must be positive");
    total *= o;
  }
  // mixed-radix encoding of (a_1, ..., a_r)
  auto decode = [&](int e) {
    std::vector<int> digits(orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
      digits[i] = e % orders[i];
      e /= orders[i];
    }
    return digits;
  };
  auto encode = [&](const std::vector<int>& digits) {
    int e = 0;
    for (std::size_t i = orders.size(); i-- > 0;) e = e * orders[i] + digits[i];
    return e;
  };
  MulTable t;
  t.order = total;
  t.identity = 0;
  t.table.assign(idx(total), std::vector<int>(idx(total)));
  for (int a = 0; a < total; ++a)
    for (int b = 0; b < total; ++b) {
      auto da = decode(a);
      const auto db = decode(b);
      for (std::size_t i = 0; i < da.size(); ++i) da[i] = (da[i] + db[i]) % orders[i];
      t.table[idx(a)][idx(b)] = encode(da);
    }
  for (std::size_t i = 0; i < orders.size(); ++i) {
    std::vector<int> unit(orders.size(), 0);
    unit[i] = 1 % orders[i];
    t.generators.push_back(encode(unit));
  }
  return t;
}

MulTable parse_mul_table(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("multiplication table: ") + e.what(), e.byte);
  }
  MulTable t;
  try {
    t.order = j.at("order").get<int>();
    t.table = j.at("table").get<std::vector<std::vector<int>>>();
    t.identity = j.at("identity").get<int>();
    t.generators = j.at("generators").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("multiplication table: ") + e.what());
  }
  t.validate();
  return t;
}

std::string mul_table_to_json(const MulTable& t) {
  nlohmann::json j;
  j["order"] = t.order;
  j["table"] = t.table;
  j["identity"] = t.identity;
  j["generators"] = t.generators;
  return j.dump();
}

namespace {

class FiniteGroupOracle final : public GroupOracle {
 public:
  explicit FiniteGroupOracle(MulTable t) : t_(std::move(t)) {
    t_.validate();
    const auto m = idx(t_.order);
    inverse_.assign(m, 0);
    for (int a = 0; a < t_.order; ++a)
      for (int b = 0; b < t_.order; ++b)
        if (mul(a, b) == t_.identity) inverse_[idx(a)] = b;
    // shortest words by breadth-first search over X^+-
    reps_.assign(m, std::nullopt);
    reps_[idx(t_.identity)] = Word{};
    std::deque<int> queue{t_.identity};
    while (!queue.empty()) {
      const int a = queue.front();
      queue.pop_front();
      for (int i = 1; i <= rank(); ++i)
        for (int s : {1, -1}) {
          const int b = step(a, Letter{i, s});
          if (!reps_[idx(b)]) {
            Word w = *reps_[idx(a)];
            w.push_back(Letter{i, s});
            reps_[idx(b)] = std::move(w);
            queue.push_back(b);
          }
        }
    }
  }

  int rank() const override { return static_cast<int>(t_.generators.size()); }
  std::string name() const override { return "finite(order " + std::to_string(t_.order) + ")"; }

  VertexKey key(const Word& w) const override { return VertexKey{eval(t_.identity, w)}; }

  Word representative(const VertexKey& k) const override {
    check(k);
    const auto& r = reps_[idx(static_cast<int>(k.data()[0]))];
    if (!r) throw PreconditionError("element is not reachable from the generators");
    return *r;
  }

  bool is_valid_key(const VertexKey& k) const override {
    return k.size() == 1 && k.data()[0] >= 0 && k.data()[0] < t_.order;
  }

  std::string describe(const VertexKey& k) const override { return "#" + std::to_string(k.data()[0]); }

  std::vector<VertexKey> trace(const VertexKey& start, const Word& w) const override {
    check(start);
    std::vector<VertexKey> keys;
    keys.reserve(w.size() + 1);
    int cur = static_cast<int>(start.data()[0]);
    keys.push_back(VertexKey{cur});
    for (const auto& l : w) {
      cur = step(cur, l);
      keys.push_back(VertexKey{cur});
    }
    return keys;
  }

  VertexKey left_multiply(const Word& g, const VertexKey& k) const override {
    check(k);
    return VertexKey{mul(eval(t_.identity, g), static_cast<int>(k.data()[0]))};
  }

  std::optional<std::int64_t> power_exponent(const Word& u, const Word& v) const override {
    const int a = eval(t_.identity, u);
    const int b = eval(t_.identity, v);
    int cur = t_.identity;
    for (std::int64_t k = 0; k < t_.order; ++k) {
      if (cur == b) return k;
      cur = mul(cur, a);
      if (cur == t_.identity) break;
    }
    return std::nullopt;
  }

  std::optional<std::int64_t> order(const Word& g) const override {
    const int a = eval(t_.identity, g);
    int cur = a;
    std::int64_t k = 1;
    while (cur != t_.identity) {
      cur = mul(cur, a);
      ++k;
    }
    return k;
  }

  std::optional<Word> conjugator(const Word& u, const Word& v) const override {
    const int a = eval(t_.identity, u);
    const int b = eval(t_.identity, v);
    for (int c = 0; c < t_.order; ++c) {
      if (!reps_[idx(c)]) continue;
      if (mul(mul(inverse_[idx(c)], a), c) == b) return *reps_[idx(c)];
    }
    return std::nullopt;
  }

  std::unique_ptr<CosetReducer> coset_reducer(const Word& u) const override;

  int mul(int a, int b) const { return t_.table[idx(a)][idx(b)]; }

 private:
  int step(int a, const Letter& l) const {
    if (l.index < 1 || l.index > rank()) throw ValidationError("generator index out of range");
    const int g = t_.generators[idx(l.index - 1)];
    return mul(a, l.sign > 0 ? g : inverse_[idx(g)]);
  }
  int eval(int start, const Word& w) const {
    int cur = start;
    for (const auto& l : w) cur = step(cur, l);
    return cur;
  }
  void check(const VertexKey& k) const {
    if (!is_valid_key(k)) throw PreconditionError("vertex key is not an element index");
  }

  MulTable t_;
  std::vector<int> inverse_;
  std::vector<std::optional<Word>> reps_;
};

// Minimum element index over the orbit {u^j g}.
class OrbitMinCosetReducer final : public CosetReducer {
 public:
  OrbitMinCosetReducer(const FiniteGroupOracle& oracle, int u) : oracle_(oracle), u_(u) {}

  VertexKey coset_key(const VertexKey& vertex) const override {
    const int g = static_cast<int>(vertex.data()[0]);
    int best = g;
    for (int cur = oracle_.mul(u_, g); cur != g; cur = oracle_.mul(u_, cur)) best = std::min(best, cur);
    return VertexKey{best};
  }

 private:
  const FiniteGroupOracle& oracle_;
  int u_;
};

std::unique_ptr<CosetReducer> FiniteGroupOracle::coset_reducer(const Word& u) const {
  return std::make_unique<OrbitMinCosetReducer>(*this, eval(t_.identity, u));
}

}  // namespace

OraclePtr make_finite_group(MulTable table) { return std::make_shared<FiniteGroupOracle>(std::move(table)); }

}  // namespace magnus
