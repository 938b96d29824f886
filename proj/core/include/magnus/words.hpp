#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace magnus {

// Generators x_1..x_n of a free group F(X).
struct Alphabet {
  int rank = 1;

  explicit Alphabet(int n);
  bool contains(int generator_index) const { return generator_index >= 1 && generator_index <= rank; }
};

// A letter x_i^{+1} or x_i^{-1}.
struct Letter {
  int index = 1;
  int sign = 1;

  Letter inverse() const { return {index, -sign}; }
  bool cancels(const Letter& other) const { return index == other.index && sign == -other.sign; }

  friend auto operator<=>(const Letter&, const Letter&) = default;
};

class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  // x_i^e for e != 0 as |e| copies of x_i^{sign e}.
  static Word generator_power(int index, std::int64_t exponent);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  void push_back(Letter l) { letters_.push_back(l); }
  Word& operator*=(const Word& rhs);

  // Letters [0, n) as a new word.
  Word prefix(std::size_t n) const;
  bool is_reduced() const;
  int max_index() const;

  friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }
  friend auto operator<=>(const Word&, const Word&) = default;
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

// Parses whitespace-separated tokens `x<k>` / `X<k>` with an optional `^<int>`.
// A lone `1` denotes the identity. Result is not reduced.
Word parse_word(std::string_view text, const Alphabet& alphabet);

// Formats with run-length powers, e.g. "x1^3 X2". Empty word formats as "".
std::string format_word(const Word& w);

Word free_reduce(const Word& w);
Word invert(const Word& w);
// k-fold product (inverse for k < 0), freely reduced.
Word power(const Word& w, std::int64_t k);

// [a, b] = a b a^-1 b^-1, freely reduced.
Word commutator(const Word& a, const Word& b);
// c^-1 w c, freely reduced.
Word conjugate(const Word& w, const Word& c);

// Splits a reduced word as t * core * t^-1 with core cyclically reduced.
struct CyclicDecomposition {
  Word conjugator;
  Word core;
};
CyclicDecomposition cyclic_reduce(const Word& reduced);

// Sum of signs per generator, indices 1..rank stored at [0..rank).
std::vector<std::int64_t> exponent_sums(const Word& w, int rank);

}  // namespace magnus
