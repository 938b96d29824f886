#include <random>
#include <sstream>

#include "doctest.h"
#include "magnus/derived.hpp"
#include "magnus/digraph.hpp"
#include "magnus/errors.hpp"
#include "magnus/finite_group.hpp"
#include "test_support.hpp"

using namespace magnus;

namespace {

Word w(const char* text, int rank = 2) { return parse_word(text, Alphabet(rank)); }

FiniteXDigraph path_tree() {
  FiniteXDigraph g;
  g.vertex_count = 4;
  g.edges = {{0, 1, 1}, {1, 2, 2}, {1, 3, 1}};
  g.root = 0;
  return g;
}

}  // namespace

TEST_CASE("support graph of the lattice square") {
  const auto z2 = make_free_abelian(2);
  const SupportGraph g = build_support_graph(*z2, w("x1 x2 X1 X2"));
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 4);
  for (const char* v : {"", "x1", "x1 x2", "x2"}) CHECK(g.vertices().count(z2->key(w(v))) == 1);
  CHECK(graph_rank(g.to_finite()) == 1);
  CHECK(girth(g.to_finite()) == 4);
}

TEST_CASE("support graph of the empty word") {
  const auto z2 = make_free_abelian(2);
  const SupportGraph g = build_support_graph(*z2, Word{});
  CHECK(g.vertex_count() == 1);
  CHECK(g.edge_count() == 0);
  CHECK(graph_rank(g.to_finite()) == 0);
  CHECK(girth(g.to_finite()) == std::nullopt);
}

TEST_CASE("support graph of [a^2,b] in S3 is a closed path with nonzero flow") {
  const auto s3 = make_finite_group(symmetric_group_s3());
  const Word u = commutator(w("x1^2"), w("x2"));
  const SupportGraph g = build_support_graph(*s3, u);
  const auto path = g.follow(u);
  REQUIRE(path.has_value());
  CHECK_FALSE(g.flow(u).empty());
}

TEST_CASE("support graph properties") {
  std::mt19937_64 rng(21);
  const auto z2 = make_free_abelian(2);
  const auto s3 = make_finite_group(symmetric_group_s3());
  const auto wp = make_wp_only(2, [](const Word& x) { return testing::PermS3::is_trivial(x); });
  for (int i = 0; i < 100; ++i) {
    const Word u = testing::random_word_up_to(rng, 2, 16);
    for (const GroupOracle* o : {z2.get(), s3.get(), wp.get()}) {
      const SupportGraph g = build_support_graph(*o, u);
      CHECK(g.vertex_count() <= u.size() + 1);
      CHECK(g.to_finite().is_folded());
      CHECK(g.to_finite().is_connected());
      for (std::size_t k = 0; k <= u.size(); ++k) CHECK(g.follow(u.prefix(k)).has_value());
    }
    // Fallback and fast keys give graphs of the same shape.
    const SupportGraph fast = build_support_graph(*s3, u);
    const SupportGraph slow = build_support_graph(*wp, u);
    CHECK(fast.vertex_count() == slow.vertex_count());
    CHECK(fast.edge_count() == slow.edge_count());
    CHECK(norm(fast.flow(u)) == norm(slow.flow(u)));
  }
}

TEST_CASE("graph rank") {
  CHECK(graph_rank(path_tree()) == 0);
  const FiniteXDigraph cay = cayley_graph(*make_finite_group(symmetric_group_s3()));
  CHECK(cay.vertex_count == 6);
  CHECK(cay.edges.size() == 12);
  CHECK(graph_rank(cay) == 7);
  FiniteXDigraph split;
  split.vertex_count = 2;
  CHECK_THROWS_AS(graph_rank(split), ValidationError);
}

TEST_CASE("girth") {
  CHECK(girth(cayley_graph(*make_finite_group(symmetric_group_s3()))) == 2);
  CHECK(girth(cayley_graph(*make_finite_group(cyclic_group(3)))) == 3);
  CHECK(girth(path_tree()) == std::nullopt);
  FiniteXDigraph loop;
  loop.vertex_count = 1;
  loop.edges = {{0, 0, 1}};
  CHECK(girth(loop) == 1);
  CHECK(girth(cayley_graph(*make_finite_group(cyclic_product({2, 3})))) == 2);
  CHECK(girth(cayley_graph(*make_finite_group(cyclic_product({5, 7})))) == 4);
}

TEST_CASE("trivial flow words are at least three times the girth") {
  // Every reduced word traceable in a finite folded graph with zero flow.
  for (const MulTable& t : {symmetric_group_s3(), cyclic_product({3, 4}), cyclic_group(5)}) {
    const auto g = make_finite_group(t);
    const auto m = girth(cayley_graph(*g));
    REQUIRE(m.has_value());
    const auto derived = make_derived_oracle(g);
    for (std::size_t len = 1; len <= 8; ++len)
      testing::for_each_reduced_word(g->rank(), len, [&](const Word& u) {
        if (derived->is_trivial(u)) CHECK(u.size() >= 3 * *m);
      });
  }
}

TEST_CASE("folding and connectivity checks") {
  FiniteXDigraph g;
  g.vertex_count = 3;
  g.edges = {{0, 1, 1}, {0, 2, 1}};
  CHECK_FALSE(g.is_folded());
  CHECK(g.is_connected());
  g.edges = {{0, 1, 1}};
  CHECK_FALSE(g.is_connected());
}

TEST_CASE("DOT export") {
  const auto z2 = make_free_abelian(2);
  const Word u = w("x1 x2 X1 X2");
  const SupportGraph g = build_support_graph(*z2, u);
  const FlowMap f = g.flow(u);
  std::ostringstream os;
  write_dot(os, g, *z2, &f);
  const std::string dot = os.str();
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("x1: 1") != std::string::npos);
  CHECK(dot.find("x2: -1") != std::string::npos);
  std::ostringstream plain;
  write_dot(plain, path_tree());
  CHECK(plain.str().find("->") != std::string::npos);
}
