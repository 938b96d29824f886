#include <random>

#include "doctest.h"
#include "magnus/errors.hpp"
#include "magnus/words.hpp"
#include "test_support.hpp"

using namespace magnus;

namespace {

Word w(const char* text, int rank = 2) { return parse_word(text, Alphabet(rank)); }

}  // namespace

TEST_CASE("parse_word grammar") {
  CHECK(w("x1 X1").size() == 2);
  CHECK(w("x1 X1") == Word{{1, 1}, {1, -1}});
  CHECK(w("x1^-3", 1) == Word{{1, -1}, {1, -1}, {1, -1}});
  CHECK(w("X2^2 x1") == Word{{2, -1}, {2, -1}, {1, 1}});
  CHECK(w("X1^-2") == Word{{1, 1}, {1, 1}});
  CHECK(w("x1^0").empty());
  CHECK(w("").empty());
  CHECK(w("   ").empty());
  CHECK(w("1").empty());
  CHECK(w("x10", 10) == Word{{10, 1}});
}

TEST_CASE("parse_word rejects bad input") {
  CHECK_THROWS_AS(w("x3"), ValidationError);
  CHECK_THROWS_AS(w("x0"), ValidationError);
  CHECK_THROWS_AS(w("y1"), ParseError);
  CHECK_THROWS_AS(w("x"), ParseError);
  CHECK_THROWS_AS(w("x1^"), ParseError);
  CHECK_THROWS_AS(w("x1^a"), ParseError);
  CHECK_THROWS_AS(w("x1x2"), ParseError);
  CHECK_THROWS_AS(Alphabet(0), ValidationError);
  try {
    w("x1 y2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 3);
  }
}

TEST_CASE("format_word round trip") {
  CHECK(format_word(w("x1 x1 x1 X2")) == "x1^3 X2");
  CHECK(format_word(Word{}) == "");
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Word u = testing::random_word_up_to(rng, 3, 20);
    CHECK(parse_word(format_word(u), Alphabet(3)) == u);
  }
}

TEST_CASE("free_reduce") {
  CHECK(free_reduce(w("x1 x2 X2 X1")).empty());
  CHECK(free_reduce(w("x1 x2")) == w("x1 x2"));
  CHECK(free_reduce(w("x1 X1 x1")) == w("x1"));
  CHECK(w("x1 x2").is_reduced());
  CHECK_FALSE(w("x1 X1").is_reduced());
}

TEST_CASE("invert and power") {
  CHECK(invert(w("x1 x2")) == w("X2 X1"));
  CHECK(invert(Word{}).empty());
  CHECK(power(w("x1 x2"), 3) == w("x1 x2 x1 x2 x1 x2"));
  CHECK(power(w("x1 x2"), 0).empty());
  CHECK(power(w("x1"), -2) == w("X1 X1"));
  CHECK(power(w("x2 x1 X2"), 3) == w("x2 x1^3 X2"));
  CHECK(commutator(w("x1"), w("x2")) == w("x1 x2 X1 X2"));
  CHECK(conjugate(w("x1"), w("x2")) == w("X2 x1 x2"));
}

TEST_CASE("cyclic_reduce and exponent sums") {
  const auto [c, core] = cyclic_reduce(w("x2 x1 x1 X2"));
  CHECK(core == w("x1 x1"));
  CHECK(free_reduce(c * core * invert(c)) == w("x2 x1 x1 X2"));
  CHECK(exponent_sums(w("x1 x2 X1 x2"), 2) == std::vector<std::int64_t>{0, 2});
}

TEST_CASE("word properties") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    std::vector<Letter> letters;
    for (int j = 0; j < 16; ++j) letters.push_back(testing::random_letter(rng, 2));
    const Word u(letters);
    const Word r = free_reduce(u);
    CHECK(free_reduce(r) == r);
    CHECK(r.size() <= u.size());
    CHECK(r.is_reduced());
    CHECK(free_reduce(u * invert(u)).empty());
    std::uniform_int_distribution<int> ex(-4, 4);
    const int a = ex(rng), b = ex(rng);
    CHECK(power(u, a + b) == free_reduce(power(u, a) * power(u, b)));
  }
}
