#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "magnus/words.hpp"

namespace magnus {

// Opaque, totally ordered identifier of an element of F/N, i.e. a vertex of
// Cay(X;N). Equality of keys coincides with equality in F/N.
class VertexKey {
 public:
  VertexKey() = default;
  explicit VertexKey(std::vector<std::int64_t> data) : data_(std::move(data)) {}
  VertexKey(std::initializer_list<std::int64_t> data) : data_(data) {}

  std::span<const std::int64_t> data() const { return data_; }
  std::size_t size() const { return data_.size(); }

  friend auto operator<=>(const VertexKey&, const VertexKey&) = default;
  friend bool operator==(const VertexKey&, const VertexKey&) = default;

 private:
  std::vector<std::int64_t> data_;
};

struct VertexKeyHash {
  std::size_t operator()(const VertexKey& k) const noexcept;
};

// Canonicalizes Cayley-graph vertices modulo left multiplication by a fixed
// element u, i.e. maps Ng to the right coset <N,u>g.
class CosetReducer {
 public:
  virtual ~CosetReducer() = default;
  virtual VertexKey coset_key(const VertexKey& vertex) const = 0;
};

// A base group F/N. Every flow computation is parameterized over one of these.
//
// Implementations must satisfy:
//   is_trivial(w)        <=> key(w) == identity_key()
//   key(a) == key(b)     <=> is_trivial(a b^-1)
//   key(representative(k)) == k
//   power_exponent(u, v) == k  =>  is_trivial(v^-1 u^k)
//
// Oracles are immutable after construction; internal caches are guarded so
// that concurrent calls are safe.
class GroupOracle {
 public:
  virtual ~GroupOracle() = default;

  virtual int rank() const = 0;
  Alphabet alphabet() const { return Alphabet(rank()); }
  virtual std::string name() const = 0;

  virtual VertexKey key(const Word& w) const = 0;
  virtual Word representative(const VertexKey& k) const = 0;
  virtual bool is_valid_key(const VertexKey& k) const = 0;
  // Human-readable rendering of a key.
  virtual std::string describe(const VertexKey& k) const;

  // False when key() is backed by pairwise word-problem calls.
  virtual bool has_fast_keys() const { return true; }
  virtual bool has_power_problem() const { return true; }

  virtual VertexKey identity_key() const { return key(Word{}); }
  virtual bool is_trivial(const Word& w) const { return key(w) == identity_key(); }

  // Keys of start*w_0..w_j for j = 0..|w| (|w|+1 entries, first is start).
  virtual std::vector<VertexKey> trace(const VertexKey& start, const Word& w) const;
  std::vector<VertexKey> prefix_keys(const Word& w) const { return trace(identity_key(), w); }
  // Key of representative(start) * w; trace(start, w).back() without the prefixes.
  virtual VertexKey right_multiply(const VertexKey& start, const Word& w) const { return trace(start, w).back(); }
  // Key of g * representative(k).
  virtual VertexKey left_multiply(const Word& g, const VertexKey& k) const;

  // Some k with v = u^k in F/N, or nullopt. Throws MissingCapability when unsupported.
  virtual std::optional<std::int64_t> power_exponent(const Word& u, const Word& v) const = 0;
  // Order of the image of g; nullopt means infinite.
  virtual std::optional<std::int64_t> order(const Word& g) const = 0;
  // Some c with c^-1 u c = v in F/N, or nullopt.
  virtual std::optional<Word> conjugator(const Word& u, const Word& v) const;

  // Reducer for right cosets of <N,u>. The default merges vertices by
  // power-problem calls and memoizes the classes it has seen.
  virtual std::unique_ptr<CosetReducer> coset_reducer(const Word& u) const;
};

using OraclePtr = std::shared_ptr<const GroupOracle>;

// Z^n = F/F'. Keys are exponent-sum vectors.
OraclePtr make_free_abelian(int n);

// F itself (N = {1}). Keys are freely reduced words.
OraclePtr make_free_group(int n);

// Wraps a bare word-problem decider; keys come from a union-find style class
// registry that compares each new word against known class representatives.
OraclePtr make_wp_only(int n, std::function<bool(const Word&)> wp, std::string name = "wp-only");

}  // namespace magnus
