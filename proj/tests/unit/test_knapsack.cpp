#include <random>

#include "doctest.h"
#include "magnus/derived.hpp"
#include "magnus/errors.hpp"
#include "magnus/io.hpp"
#include "magnus/knapsack.hpp"
#include "test_support.hpp"

using namespace magnus;

namespace {

Word w(const char* text, int rank = 2) { return parse_word(text, Alphabet(rank)); }

SspInstance metabelian(std::vector<Word> gens, Word target) {
  SspInstance s;
  s.generators = std::move(gens);
  s.target = std::move(target);
  return s;
}

AgpInstance diamond(Word target) {
  AgpInstance a;
  a.vertices = 4;
  a.edges = {{0, 1, w("x1")}, {1, 3, w("x2")}, {0, 2, w("x2")}, {2, 3, w("x1")}};
  a.source = 0;
  a.sink = 3;
  a.target = std::move(target);
  return a;
}

}  // namespace

TEST_CASE("subset sum in the free metabelian group") {
  CHECK(ssp_solve_brute(metabelian({w("x1"), w("x2")}, w("x1 x2"))) == BitVector{1, 1});
  CHECK(ssp_solve_brute(metabelian({w("x1"), w("x2")}, w("x2 x1"))) == std::nullopt);
  CHECK(ssp_solve_brute(metabelian({w("x1"), w("x2")}, Word{})) == BitVector{0, 0});
  std::vector<Word> many(21, w("x1"));
  CHECK_THROWS_AS(ssp_solve_brute(metabelian(many, Word{})), CapExceeded);
  CHECK(ssp_solve_brute(metabelian(many, Word{}), 21) == BitVector(21, 0));
}

TEST_CASE("zero-one equations") {
  CHECK(zoe_solve_brute({{{1, 0}, {0, 1}}}) == BitVector{1, 1});
  CHECK(zoe_solve_brute({{{1, 1}, {0, 0}}}) == std::nullopt);
  CHECK(zoe_solve_brute({{{1, 1}}}) == BitVector{1, 0});
  CHECK_THROWS_AS(zoe_solve_brute({{{1, 2}}}), ValidationError);
  CHECK_THROWS_AS(zoe_solve_brute({{{1, 0}, {1}}}), ValidationError);
  CHECK_THROWS_AS(zoe_solve_brute({}), ValidationError);
}

TEST_CASE("ZOE to SSP reduction") {
  const SspInstance one = zoe_to_ssp({{{1}}}, 2);
  REQUIRE(one.generators.size() == 1);
  CHECK(one.generators[0] == one.target);
  CHECK(ssp_solve_brute(one) == BitVector{1});
  CHECK(ssp_solve_brute(zoe_to_ssp({{{1, 0}, {0, 1}}}, 2)) == BitVector{1, 1});
  CHECK(ssp_solve_brute(zoe_to_ssp({{{1, 1}, {0, 0}}}, 2)) == std::nullopt);
  CHECK_THROWS_AS(zoe_to_ssp({{{1}}}, 1), ValidationError);
  CHECK(zoe_to_ssp({{{1}}}, 3).group.rank == 3);
}

TEST_CASE("commutator basis") {
  const CommutatorBasis b = commutator_basis(3);
  CHECK(b.spacing == 9);
  CHECK(b.conjugators[0].empty());
  CHECK(b.conjugators[2] == w("x1^18"));
  const auto z2 = make_free_abelian(2);
  for (const Word& hi : b.elements)
    for (const Word& hj : b.elements) CHECK(wp_derived(z2, commutator(hi, hj)));
  for (int a0 = -2; a0 <= 2; ++a0)
    for (int a1 = -2; a1 <= 2; ++a1)
      for (int a2 = -2; a2 <= 2; ++a2) {
        if (a0 == 0 && a1 == 0 && a2 == 0) continue;
        const Word p = power(b.elements[0], a0) * power(b.elements[1], a1) * power(b.elements[2], a2);
        CHECK_FALSE(wp_derived(z2, free_reduce(p)));
      }
}

TEST_CASE("subset sum over the lattice is vector feasibility") {
  const auto z2 = make_free_abelian(2);
  std::mt19937_64 rng(51);
  for (int i = 0; i < 100; ++i) {
    std::vector<Word> gens;
    for (int j = 0; j < 5; ++j) gens.push_back(testing::random_word_up_to(rng, 2, 3));
    const Word target = testing::random_word_up_to(rng, 2, 4);
    std::optional<BitVector> expected;
    const auto t = exponent_sums(target, 2);
    for (unsigned mask = 0; mask < 32 && !expected; ++mask) {
      std::int64_t s0 = 0, s1 = 0;
      for (int j = 0; j < 5; ++j)
        if (mask >> j & 1U) {
          const auto e = exponent_sums(gens[j], 2);
          s0 += e[0];
          s1 += e[1];
        }
      if (s0 == t[0] && s1 == t[1]) {
        expected = BitVector(5);
        for (int j = 0; j < 5; ++j) (*expected)[j] = static_cast<int>(mask >> j & 1U);
      }
    }
    CHECK(ssp_solve_brute(*z2, gens, target) == expected);
  }
}

TEST_CASE("acyclic graph problem") {
  const auto m2 = make_free_solvable(2, 2);
  AgpInstance single;
  single.vertices = 2;
  single.edges = {{0, 1, w("x1")}};
  single.sink = 1;
  single.target = w("x1");
  CHECK(agp_solve_brute(single, *m2) == std::vector<std::size_t>{0});
  CHECK(agp_solve_brute(diamond(w("x2 x1")), *m2) == std::vector<std::size_t>{2, 3});
  CHECK(agp_solve_brute(diamond(w("x1 x2")), *m2) == std::vector<std::size_t>{0, 1});
  CHECK(agp_solve_brute(diamond(w("x1 x2 X1 X2")), *m2) == std::nullopt);

  AgpInstance cyclic = diamond(Word{});
  cyclic.edges.push_back({3, 0, w("x1")});
  CHECK_THROWS_AS(agp_solve_brute(cyclic, *m2), ValidationError);

  // 2^12 source-sink paths through a chain of diamonds.
  AgpInstance chain;
  chain.vertices = 13;
  chain.sink = 12;
  for (std::size_t v = 0; v < 12; ++v) {
    chain.edges.push_back({v, v + 1, w("x1")});
    chain.edges.push_back({v, v + 1, w("x2")});
  }
  chain.target = w("x2^12");
  CHECK_THROWS_AS(agp_solve_brute(chain, *m2, 1000), CapExceeded);
  CHECK(agp_solve_brute(chain, *m2, 5000)->size() == 12);
}

TEST_CASE("instance files") {
  const SspInstance s = parse_ssp(R"({"group": {"kind": "free-solvable", "rank": 2, "degree": 2},
    "generators": ["x1", "x2"], "target": "x1 x2"})");
  CHECK(s.group.kind == GroupKind::free_solvable);
  CHECK(s.generators.size() == 2);
  const SspInstance back = parse_ssp(ssp_to_json(s));
  CHECK(back.generators == s.generators);
  CHECK(back.target == s.target);

  const SspInstance finite = parse_ssp(R"({"group": {"kind": "finite", "table": "s3"}, "generators": ["x1"], "target": "x1^4"})");
  CHECK(ssp_solve_brute(finite) == BitVector{1});

  CHECK_THROWS_AS(parse_ssp(R"({"group": {"kind": "free", "rank": 2}, "generators": ["x3"], "target": ""})"), ValidationError);
  CHECK_THROWS_AS(parse_ssp(R"({"group": {"kind": "free-abelian", "degree": 2}, "generators": [], "target": ""})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_ssp(R"({"group": {"kind": "finite"}, "generators": [], "target": ""})"), ValidationError);
  CHECK_THROWS_AS(parse_ssp("{\"generators\": []}"), ValidationError);
  CHECK_THROWS_AS(parse_ssp("[1,"), ParseError);

  const ZoeInstance z = parse_zoe(R"({"matrix": [[1, 0], [0, 1]]})");
  CHECK(parse_zoe(zoe_to_json(z)).matrix == z.matrix);
  CHECK_THROWS_AS(parse_zoe(R"({"matrix": [[2]]})"), ValidationError);

  const AgpInstance a = parse_agp(R"({"vertices": 2, "edges": [{"from": 0, "to": 1, "label": "x1"}],
    "source": 0, "sink": 1, "target": "x1"})");
  CHECK(a.edges.size() == 1);
  CHECK_FALSE(a.group.has_value());
  CHECK(parse_agp(agp_to_json(a)).edges[0].label == w("x1"));
  CHECK_THROWS_AS(parse_agp(R"({"vertices": 1, "edges": [{"from": 0, "to": 3, "label": ""}],
    "source": 0, "sink": 0, "target": ""})"), ValidationError);
}
