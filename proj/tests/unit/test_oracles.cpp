#include <random>
#include <set>

#include "doctest.h"
#include "magnus/derived.hpp"
#include "magnus/errors.hpp"
#include "magnus/finite_group.hpp"
#include "magnus/oracle.hpp"
#include "test_support.hpp"

using namespace magnus;

namespace {

Word w(const char* text, int rank = 2) { return parse_word(text, Alphabet(rank)); }

void check_interface_invariants(const GroupOracle& g, std::uint64_t seed, std::size_t max_len = 12) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 100; ++i) {
    const Word a = testing::random_word_up_to(rng, g.rank(), max_len);
    const Word b = testing::random_word_up_to(rng, g.rank(), max_len);
    CHECK(g.is_trivial(a) == (g.key(a) == g.identity_key()));
    CHECK((g.key(a) == g.key(b)) == g.is_trivial(free_reduce(a * invert(b))));
    CHECK(g.key(g.representative(g.key(a))) == g.key(a));
    CHECK(g.is_valid_key(g.key(a)));
    const auto keys = g.prefix_keys(a);
    REQUIRE(keys.size() == a.size() + 1);
    CHECK(keys.back() == g.key(a));
    CHECK(g.right_multiply(g.key(a), b) == g.key(a * b));
    CHECK(g.left_multiply(b, g.key(a)) == g.key(b * a));
    if (g.has_power_problem()) {
      std::uniform_int_distribution<int> ex(-3, 3);
      const int k = ex(rng);
      const Word v = free_reduce(power(a, k));
      const auto found = g.power_exponent(a, v);
      REQUIRE(found.has_value());
      CHECK(g.is_trivial(free_reduce(invert(v) * power(a, *found))));
    }
  }
}

}  // namespace

TEST_CASE("free abelian oracle") {
  const auto z2 = make_free_abelian(2);
  CHECK(z2->is_trivial(w("x1 X1")));
  CHECK(z2->is_trivial(w("x1 x2 X1 X2")));
  CHECK(z2->power_exponent(w("x1 x2"), w("x1^3 x2^3")) == 3);
  CHECK(z2->power_exponent(w("x1 x2"), w("x1^3 x2^2")) == std::nullopt);
  CHECK(z2->power_exponent(Word{}, Word{}) == 0);
  CHECK(z2->power_exponent(Word{}, w("x1")) == std::nullopt);
  CHECK(z2->order(w("x1")) == std::nullopt);
  CHECK(z2->order(Word{}) == 1);
  CHECK(z2->conjugator(w("x1 x2"), w("x2 x1")).has_value());
  CHECK_FALSE(z2->conjugator(w("x1"), w("x2")).has_value());
  check_interface_invariants(*z2, 1);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const Word a = testing::random_word_up_to(rng, 2, 10);
    const auto s = exponent_sums(a, 2);
    CHECK(z2->is_trivial(a) == (s[0] == 0 && s[1] == 0));
  }
}

TEST_CASE("free abelian coset reducer") {
  const auto z2 = make_free_abelian(2);
  const auto red = z2->coset_reducer(w("x1"));
  CHECK(red->coset_key(z2->key(w("x1^3 x2^2"))) == z2->key(w("x2^2")));
  const auto red2 = z2->coset_reducer(w("x1^2 x2"));
  CHECK(red2->coset_key(z2->key(w("x1^5 x2"))) == red2->coset_key(z2->key(w("x1 X2"))));
  CHECK(red2->coset_key(z2->key(w("x1"))) != red2->coset_key(z2->key(Word{})));
}

TEST_CASE("finite group oracle on S3") {
  const auto s3 = make_finite_group(symmetric_group_s3());
  CHECK(s3->is_trivial(w("x1^3")));
  CHECK(s3->is_trivial(w("x2^2")));
  CHECK(s3->power_exponent(w("x1"), w("x1^2")) == 2);
  CHECK_FALSE(s3->is_trivial(w("x1 x2 X1 X2")));
  CHECK(s3->order(w("x1")) == 3);
  CHECK(s3->order(w("x2")) == 2);
  CHECK(s3->power_exponent(w("x1"), w("x2")) == std::nullopt);
  check_interface_invariants(*s3, 3);

  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const Word a = testing::random_word_up_to(rng, 2, 14);
    const Word b = testing::random_word_up_to(rng, 2, 14);
    CHECK(s3->is_trivial(a) == testing::PermS3::is_trivial(a));
    const bool same = testing::PermS3::evaluate(a) == testing::PermS3::evaluate(b);
    CHECK((s3->key(a) == s3->key(b)) == same);
  }

  const auto red = s3->coset_reducer(w("x1"));
  std::set<VertexKey> cosets;
  for (const char* g : {"", "x1", "x1^2", "x2", "x1 x2", "x1^2 x2"}) cosets.insert(red->coset_key(s3->key(w(g))));
  CHECK(cosets.size() == 2);
}

TEST_CASE("multiplication table validation") {
  MulTable t = symmetric_group_s3();
  CHECK_NOTHROW(t.validate());
  MulTable bad = t;
  bad.table[1][2] = bad.table[1][1];
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  MulTable no_identity = t;
  no_identity.identity = 1;
  CHECK_THROWS_AS(no_identity.validate(), ValidationError);
  MulTable range = t;
  range.generators = {7};
  CHECK_THROWS_AS(range.validate(), ValidationError);
  // Associativity: a loop with identity and inverses that is not a group.
  MulTable loop;
  loop.order = 5;
  loop.identity = 0;
  loop.generators = {1};
  loop.table = {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(loop.validate(), ValidationError);
  CHECK_THROWS_AS(make_finite_group(loop), ValidationError);

  const MulTable round = parse_mul_table(mul_table_to_json(t));
  CHECK(round.table == t.table);
  CHECK(round.generators == t.generators);
  CHECK_THROWS_AS(parse_mul_table("{\"order\": 2}"), ValidationError);
  CHECK_THROWS_AS(parse_mul_table("{"), ParseError);
}

TEST_CASE("cyclic groups") {
  const auto c5 = make_finite_group(cyclic_group(5));
  CHECK(c5->rank() == 1);
  CHECK(c5->is_trivial(w("x1^5", 1)));
  CHECK(c5->order(w("x1^2", 1)) == 5);
  const auto c23 = make_finite_group(cyclic_product({2, 3}));
  CHECK(c23->is_trivial(w("x1 x2 X1 X2")));
  CHECK(c23->order(w("x1 x2")) == 6);
  check_interface_invariants(*c23, 5);
}

TEST_CASE("free group oracle") {
  const auto f2 = make_free_group(2);
  CHECK_FALSE(f2->is_trivial(w("x1 x2 X1 X2")));
  CHECK(f2->power_exponent(w("x1 x2"), w("x1 x2 x1 x2")) == 2);
  CHECK(f2->power_exponent(w("x1"), w("x2")) == std::nullopt);
  CHECK(f2->power_exponent(w("x2 x1 X2"), w("x2 X1^3 X2")) == -3);
  const auto c = f2->conjugator(w("x1 x2"), w("x2 x1"));
  REQUIRE(c.has_value());
  CHECK(free_reduce(conjugate(w("x1 x2"), *c)) == w("x2 x1"));
  CHECK_FALSE(f2->conjugator(w("x1 x2"), w("x1 X2")).has_value());
  check_interface_invariants(*f2, 6);
}

TEST_CASE("wp-only oracle uses the class registry") {
  const auto wp = make_wp_only(2, [](const Word& u) { return testing::PermS3::is_trivial(u); }, "s3-perm");
  CHECK_FALSE(wp->has_fast_keys());
  CHECK_FALSE(wp->has_power_problem());
  CHECK(wp->is_trivial(w("x1^3")));
  CHECK(wp->key(w("x1 x2")) == wp->key(w("x2 X1")));
  CHECK_THROWS_AS(wp->power_exponent(w("x1"), w("x1")), MissingCapability);
  check_interface_invariants(*wp, 7);
}

TEST_CASE("oracles reject out-of-range letters") {
  CHECK_THROWS_AS(make_free_abelian(2)->key(w("x3", 3)), ValidationError);
  CHECK_THROWS_AS(make_free_abelian(0), ValidationError);
}

TEST_CASE("derived oracle interface invariants") {
  check_interface_invariants(*make_free_solvable(2, 2), 8, 10);
  check_interface_invariants(*make_derived_oracle(make_finite_group(symmetric_group_s3())), 9, 8);
}
