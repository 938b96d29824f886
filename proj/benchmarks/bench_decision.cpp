#include <benchmark/benchmark.h>

#include <random>

#include "magnus/derived.hpp"
#include "magnus/finite_group.hpp"
#include "test_support.hpp"

using namespace magnus;

namespace {

Word sample(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return testing::random_reduced_word(rng, 2, n);
}

void BM_WordProblem(benchmark::State& state, int degree) {
  const auto g = make_free_solvable(2, degree);
  const Word w = sample(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(g->is_trivial(w));
  state.SetComplexityN(state.range(0));
}
BENCHMARK_CAPTURE(BM_WordProblem, metabelian, 2)->RangeMultiplier(2)->Range(64, 4096)->Complexity();
BENCHMARK_CAPTURE(BM_WordProblem, degree3, 3)->RangeMultiplier(2)->Range(32, 512)->Complexity();

void BM_WordProblemFiniteBase(benchmark::State& state) {
  const auto g = make_derived_oracle(make_finite_group(symmetric_group_s3()));
  const Word w = sample(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(g->is_trivial(w));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WordProblemFiniteBase)->RangeMultiplier(2)->Range(64, 4096)->Complexity();

void BM_PowerProblem(benchmark::State& state) {
  const auto z2 = make_free_abelian(2);
  const Word u = sample(static_cast<std::size_t>(state.range(0)), 3);
  const Word v = free_reduce(power(u, 5) * sample(2, 4));
  for (auto _ : state) benchmark::DoNotOptimize(pp_derived(z2, u, v));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PowerProblem)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_Conjugacy(benchmark::State& state) {
  const auto z2 = make_free_abelian(2);
  const Word u = sample(static_cast<std::size_t>(state.range(0)), 5);
  const Word c = sample(static_cast<std::size_t>(state.range(0)), 6);
  const Word v = free_reduce(conjugate(u, c));
  for (auto _ : state) benchmark::DoNotOptimize(cp_derived(z2, u, v));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Conjugacy)->RangeMultiplier(2)->Range(8, 128)->Complexity();

}  // namespace
BENCHMARK_MAIN();
