#include "magnus/oracle.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "magnus/checked.hpp"
#include "magnus/errors.hpp"

namespace magnus {

std::size_t VertexKeyHash::operator()(const VertexKey& k) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ k.size();
  for (auto v : k.data()) {
    h ^= std::hash<std::int64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string GroupOracle::describe(const VertexKey& k) const {
  const auto rep = format_word(representative(k));
  return "[" + rep + "]";
}

std::vector<VertexKey> GroupOracle::trace(const VertexKey& start, const Word& w) const {
  const Word rep = representative(start);
  std::vector<VertexKey> keys;
  keys.reserve(w.size() + 1);
  keys.push_back(start);
  Word current = rep;
  for (const auto& l : w) {
    current.push_back(l);
    keys.push_back(key(current));
  }
  return keys;
}

VertexKey GroupOracle::left_multiply(const Word& g, const VertexKey& k) const {
  return key(g * representative(k));
}

std::optional<Word> GroupOracle::conjugator(const Word&, const Word&) const {
  throw MissingCapability(name() + ": conjugacy problem not available");
}

namespace {

// Merges vertices Ng, Nh into one coset when g h^-1 is a power of u.
class PowerProblemCosetReducer final : public CosetReducer {
 public:
  PowerProblemCosetReducer(const GroupOracle& oracle, Word u) : oracle_(oracle), u_(std::move(u)) {}

  VertexKey coset_key(const VertexKey& vertex) const override {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(vertex); it != cache_.end()) return it->second;
    const Word w = oracle_.representative(vertex);
    for (const auto& [rep_key, rep_word] : classes_) {
      if (oracle_.power_exponent(u_, free_reduce(w * invert(rep_word)))) {
        cache_.emplace(vertex, rep_key);
        return rep_key;
      }
    }
    classes_.emplace_back(vertex, w);
    cache_.emplace(vertex, vertex);
    return vertex;
  }

 private:
  const GroupOracle& oracle_;
  Word u_;
  mutable std::mutex mutex_;
  mutable std::vector<std::pair<VertexKey, Word>> classes_;
  mutable std::map<VertexKey, VertexKey> cache_;
};

}  // namespace

std::unique_ptr<CosetReducer> GroupOracle::coset_reducer(const Word& u) const {
  if (!has_power_problem()) throw MissingCapability(name() + ": Schreier graphs need the power problem");
  return std::make_unique<PowerProblemCosetReducer>(*this, free_reduce(u));
}

// ---------------------------------------------------------------------------
// Z^n

namespace {

void add_letter(std::vector<std::int64_t>& v, const Letter& l) {
  auto& slot = v[static_cast<std::size_t>(l.index - 1)];
  slot = checked_add(slot, l.sign);
}

class FreeAbelianOracle final : public GroupOracle {
 public:
  explicit FreeAbelianOracle(int n) : n_(n) {
    if (n < 1) throw ValidationError("free abelian rank must be at least 1");
  }

  int rank() const override { return n_; }
  std::string name() const override { return "free-abelian(" + std::to_string(n_) + ")"; }

  VertexKey key(const Word& w) const override { return VertexKey(exponent_sums(w, n_)); }

  Word representative(const VertexKey& k) const override {
    check(k);
    Word w;
    for (int i = 0; i < n_; ++i) w *= Word::generator_power(i + 1, k.data()[static_cast<std::size_t>(i)]);
    return w;
  }

  bool is_valid_key(const VertexKey& k) const override { return k.size() == static_cast<std::size_t>(n_); }

  std::string describe(const VertexKey& k) const override {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k.data()[i];
    os << ')';
    return os.str();
  }

  std::vector<VertexKey> trace(const VertexKey& start, const Word& w) const override {
    check(start);
    std::vector<VertexKey> keys;
    keys.reserve(w.size() + 1);
    std::vector<std::int64_t> cur(start.data().begin(), start.data().end());
    keys.emplace_back(cur);
    for (const auto& l : w) {
      validate_letter(l);
      add_letter(cur, l);
      keys.emplace_back(cur);
    }
    return keys;
  }

  VertexKey left_multiply(const Word& g, const VertexKey& k) const override {
    check(k);
    std::vector<std::int64_t> cur(k.data().begin(), k.data().end());
    for (const auto& l : g) {
      validate_letter(l);
      add_letter(cur, l);
    }
    return VertexKey(std::move(cur));
  }

  std::optional<std::int64_t> power_exponent(const Word& u, const Word& v) const override {
    const auto a = exponent_sums(u, n_);
    const auto b = exponent_sums(v, n_);
    const auto pivot = std::find_if(a.begin(), a.end(), [](auto x) { return x != 0; });
    if (pivot == a.end()) {
      if (std::all_of(b.begin(), b.end(), [](auto x) { return x == 0; })) return 0;
      return std::nullopt;
    }
    const auto p = static_cast<std::size_t>(pivot - a.begin());
    if (b[p] % a[p] != 0) return std::nullopt;
    const std::int64_t k = b[p] / a[p];
    for (std::size_t i = 0; i < a.size(); ++i)
      if (checked_mul(k, a[i]) != b[i]) return std::nullopt;
    return k;
  }

  std::optional<std::int64_t> order(const Word& g) const override {
    const auto a = exponent_sums(g, n_);
    if (std::all_of(a.begin(), a.end(), [](auto x) { return x == 0; })) return 1;
    return std::nullopt;
  }

  std::optional<Word> conjugator(const Word& u, const Word& v) const override {
    if (exponent_sums(u, n_) == exponent_sums(v, n_)) return Word{};
    return std::nullopt;
  }

  std::unique_ptr<CosetReducer> coset_reducer(const Word& u) const override;

 private:
  void check(const VertexKey& k) const {
    if (!is_valid_key(k)) throw PreconditionError("vertex key is not a Z^" + std::to_string(n_) + " vector");
  }
  void validate_letter(const Letter& l) const {
    if (l.index < 1 || l.index > n_) throw ValidationError("generator index out of range");
  }

  int n_;
};

// Cosets of <u> in Z^n: subtract the multiple of u that puts the first
// nonzero coordinate p of u into [0, |u_p|).
class PivotCosetReducer final : public CosetReducer {
 public:
  explicit PivotCosetReducer(std::vector<std::int64_t> u) : u_(std::move(u)) {
    const auto it = std::find_if(u_.begin(), u_.end(), [](auto x) { return x != 0; });
    pivot_ = it == u_.end() ? u_.size() : static_cast<std::size_t>(it - u_.begin());
  }

  VertexKey coset_key(const VertexKey& vertex) const override {
    if (pivot_ == u_.size()) return vertex;
    std::vector<std::int64_t> g(vertex.data().begin(), vertex.data().end());
    const std::int64_t up = u_[pivot_];
    const std::int64_t m = up < 0 ? -up : up;
    std::int64_t q = g[pivot_] / up;
    // floor-adjust so that the residue lands in [0, m)
    std::int64_t r = checked_sub(g[pivot_], checked_mul(q, up));
    if (r < 0) {
      q += up > 0 ? -1 : 1;
      r += m;
    }
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = checked_sub(g[i], checked_mul(q, u_[i]));
    return VertexKey(std::move(g));
  }

 private:
  std::vector<std::int64_t> u_;
  std::size_t pivot_;
};

std::unique_ptr<CosetReducer> FreeAbelianOracle::coset_reducer(const Word& u) const {
  return std::make_unique<PivotCosetReducer>(exponent_sums(u, n_));
}

// ---------------------------------------------------------------------------
// Free group

std::int64_t encode_letter(const Letter& l) { return static_cast<std::int64_t>(l.index) * l.sign; }
Letter decode_letter(std::int64_t v) { return Letter{static_cast<int>(v < 0 ? -v : v), v < 0 ? -1 : 1}; }

class FreeGroupOracle final : public GroupOracle {
 public:
  explicit FreeGroupOracle(int n) : n_(n) {
    if (n < 1) throw ValidationError("free group rank must be at least 1");
  }

  int rank() const override { return n_; }
  std::string name() const override { return "free(" + std::to_string(n_) + ")"; }

  VertexKey key(const Word& w) const override {
    validate(w);
    return encode(free_reduce(w));
  }

  Word representative(const VertexKey& k) const override {
    if (!is_valid_key(k)) throw PreconditionError("vertex key is not a reduced word");
    std::vector<Letter> ls;
    ls.reserve(k.size());
    for (auto v : k.data()) ls.push_back(decode_letter(v));
    return Word(std::move(ls));
  }

  bool is_valid_key(const VertexKey& k) const override {
    for (std::size_t i = 0; i < k.size(); ++i) {
      const auto v = k.data()[i];
      if (v == 0 || v > n_ || v < -n_) return false;
      if (i > 0 && k.data()[i - 1] == -v) return false;
    }
    return true;
  }

  std::string describe(const VertexKey& k) const override {
    const auto s = format_word(representative(k));
    return s.empty() ? "1" : s;
  }

  std::vector<VertexKey> trace(const VertexKey& start, const Word& w) const override {
    validate(w);
    std::vector<Letter> cur = representative(start).letters();
    std::vector<VertexKey> keys;
    keys.reserve(w.size() + 1);
    keys.push_back(start);
    for (const auto& l : w) {
      if (!cur.empty() && cur.back().cancels(l))
        cur.pop_back();
      else
        cur.push_back(l);
      keys.push_back(encode(Word(cur)));
    }
    return keys;
  }

  std::optional<std::int64_t> power_exponent(const Word& u, const Word& v) const override {
    validate(u);
    validate(v);
    const Word ru = free_reduce(u);
    const Word rv = free_reduce(v);
    if (rv.empty()) return 0;
    if (ru.empty()) return std::nullopt;
    const auto [t, core] = cyclic_reduce(ru);
    const Word shifted = free_reduce(invert(t) * rv * t);
    if (shifted.size() % core.size() != 0) return std::nullopt;
    const auto k = static_cast<std::int64_t>(shifted.size() / core.size());
    if (power(core, k) == shifted) return k;
    if (power(core, -k) == shifted) return -k;
    return std::nullopt;
  }

  std::optional<std::int64_t> order(const Word& g) const override {
    validate(g);
    if (free_reduce(g).empty()) return 1;
    return std::nullopt;
  }

  std::optional<Word> conjugator(const Word& u, const Word& v) const override {
    validate(u);
    validate(v);
    const auto [t1, c1] = cyclic_reduce(free_reduce(u));
    const auto [t2, c2] = cyclic_reduce(free_reduce(v));
    if (c1.size() != c2.size()) return std::nullopt;
    if (c1.empty()) return Word{};
    // c2 = a^-1 c1 a for a = c1[0..s), so c = t1 a t2^-1.
    for (std::size_t s = 0; s < c1.size(); ++s) {
      bool match = true;
      for (std::size_t i = 0; i < c1.size() && match; ++i) match = c1[(s + i) % c1.size()] == c2[i];
      if (match) return free_reduce(t1 * c1.prefix(s) * invert(t2));
    }
    return std::nullopt;
  }

 private:
  void validate(const Word& w) const {
    if (w.max_index() > n_) throw ValidationError("generator index out of range");
  }
  static VertexKey encode(const Word& reduced) {
    std::vector<std::int64_t> data;
    data.reserve(reduced.size());
    for (const auto& l : reduced) data.push_back(encode_letter(l));
    return VertexKey(std::move(data));
  }

  int n_;
};

// ---------------------------------------------------------------------------
// WP-only adapter

class WpOnlyOracle final : public GroupOracle {
 public:
  WpOnlyOracle(int n, std::function<bool(const Word&)> wp, std::string name)
      : n_(n), wp_(std::move(wp)), name_(std::move(name)) {
    if (n < 1) throw ValidationError("rank must be at least 1");
    classes_.push_back(Word{});
  }

  int rank() const override { return n_; }
  std::string name() const override { return name_; }
  bool has_fast_keys() const override { return false; }
  bool has_power_problem() const override { return false; }

  bool is_trivial(const Word& w) const override { return wp_(w); }
  VertexKey identity_key() const override { return VertexKey{0}; }

  VertexKey key(const Word& w) const override {
    std::lock_guard lock(mutex_);
    for (std::size_t i = 0; i < classes_.size(); ++i)
      if (wp_(free_reduce(w * invert(classes_[i])))) return VertexKey{static_cast<std::int64_t>(i)};
    classes_.push_back(free_reduce(w));
    return VertexKey{static_cast<std::int64_t>(classes_.size() - 1)};
  }

  Word representative(const VertexKey& k) const override {
    std::lock_guard lock(mutex_);
    if (k.size() != 1 || k.data()[0] < 0 || static_cast<std::size_t>(k.data()[0]) >= classes_.size())
      throw PreconditionError("unknown vertex key");
    return classes_[static_cast<std::size_t>(k.data()[0])];
  }

  bool is_valid_key(const VertexKey& k) const override {
    std::lock_guard lock(mutex_);
    return k.size() == 1 && k.data()[0] >= 0 && static_cast<std::size_t>(k.data()[0]) < classes_.size();
  }

  std::optional<std::int64_t> power_exponent(const Word&, const Word&) const override {
    throw MissingCapability(name_ + ": power problem not available");
  }
  std::optional<std::int64_t> order(const Word&) const override {
    throw MissingCapability(name_ + ": element orders not available");
  }

 private:
  int n_;
  std::function<bool(const Word&)> wp_;
  std::string name_;
  mutable std::mutex mutex_;
  mutable std::vector<Word> classes_;
};

}  // namespace

OraclePtr make_free_abelian(int n) { return std::make_shared<FreeAbelianOracle>(n); }
OraclePtr make_free_group(int n) { return std::make_shared<FreeGroupOracle>(n); }
OraclePtr make_wp_only(int n, std::function<bool(const Word&)> wp, std::string name) {
  return std::make_shared<WpOnlyOracle>(n, std::move(wp), std::move(name));
}

}  // namespace magnus
