#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "randassign/decomposers.hpp"
#include "randassign/exactlp.hpp"
#include "randassign/oracles.hpp"
#include "randassign/rules.hpp"
#include "randassign/search.hpp"

namespace {

using namespace randassign;

Instance random_instance(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Object>> prefs(n, std::vector<Object>(n));
  for (auto& p : prefs) {
    std::iota(p.begin(), p.end(), Object{0});
    std::shuffle(p.begin(), p.end(), rng);
  }
  return Instance(prefs);
}

void BM_ProbabilisticSerial(benchmark::State& state) {
  const Instance inst = random_instance(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(probabilistic_serial(inst));
}
BENCHMARK(BM_ProbabilisticSerial)->DenseRange(3, 8);

void BM_RandomPriority(benchmark::State& state) {
  const Instance inst = random_instance(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(random_priority(inst));
}
BENCHMARK(BM_RandomPriority)->DenseRange(3, 6);

void BM_Birkhoff(benchmark::State& state) {
  const Instance inst = random_instance(static_cast<std::size_t>(state.range(0)), 3);
  const Matrix m = probabilistic_serial(inst);
  for (auto _ : state) benchmark::DoNotOptimize(birkhoff(m));
}
BENCHMARK(BM_Birkhoff)->DenseRange(3, 8);

// Dense feasibility LP: maximise sum x subject to n random <= rows.
void BM_SimplexDense(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<long> coef(1, 9);
  lp::LinearProgram prog(n);
  prog.sense = lp::Sense::maximize;
  prog.objective.assign(n, Rational(1));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row(n);
    for (auto& x : row) x = coef(rng);
    prog.add_constraint(row, lp::Relation::less_equal, coef(rng) * 10);
  }
  for (auto _ : state) benchmark::DoNotOptimize(lp::solve(prog));
}
BENCHMARK(BM_SimplexDense)->RangeMultiplier(2)->Range(4, 32);

void BM_EfDecomposable(benchmark::State& state) {
  const Instance inst = random_instance(static_cast<std::size_t>(state.range(0)), 5);
  const Matrix m = probabilistic_serial(inst);
  for (auto _ : state) benchmark::DoNotOptimize(ef_decomposable(inst, m));
}
BENCHMARK(BM_EfDecomposable)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_SearchCanonical(benchmark::State& state) {
  search::SearchOptions options;
  options.canonical = true;
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search::verify_ps_ef_decomposable(n, options));
}
BENCHMARK(BM_SearchCanonical)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
