#include <benchmark/benchmark.h>

#include "ugalearn/learner.hpp"
#include "ugalearn/oracle.hpp"
#include "ugalearn/schema.hpp"
#include "ugalearn/uga.hpp"

namespace {

using namespace ugalearn;

OracleSpec paper_oracle(std::uint32_t n) {
  OracleSpec spec;
  spec.n = n;
  spec.k = 7;
  spec.essential = {1, 2, 3, 4, 5, 6, 7};
  spec.eta = Rational(1, 5);
  return spec;
}

void BM_CounterRngDraw(benchmark::State& state) {
  const CounterRng rng(42);
  const auto stream = rng.stream(17, Phase::mutation);
  std::uint64_t a = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(stream.draw(a++, 5));
  }
}
BENCHMARK(BM_CounterRngDraw);

void BM_OracleQuery(benchmark::State& state) {
  const NoisyOracle oracle(paper_oracle(static_cast<std::uint32_t>(state.range(0))));
  const CounterRng rng(7);
  Population pop = random_population(64, oracle.spec().n, rng);
  QueryCounter counter;
  std::uint32_t r = 0;
  const auto noise = rng.stream(1, Phase::oracle_noise);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle.query_with_noise(pop.row_words(r & 63), noise.draw(r), counter));
    ++r;
  }
}
BENCHMARK(BM_OracleQuery)->Arg(8)->Arg(64)->Arg(1024);

void BM_GaGeneration(benchmark::State& state) {
  const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
  const NoisyOracle oracle(paper_oracle(n));
  GaConfig cfg = make_ga_config(GaPreset::paper, n, 99);
  const CounterRng rng(cfg.seed);
  Population pop = random_population(cfg.population_size, n, rng);
  QueryCounter counter;
  std::uint32_t g = 1;
  for (auto _ : state) {
    pop = step(pop, oracle, cfg, rng, g++, counter);
  }
  state.SetItemsProcessed(state.iterations() * cfg.population_size);
}
BENCHMARK(BM_GaGeneration)->Arg(8)->Arg(32);

void BM_RecursiveMajority(benchmark::State& state) {
  const std::uint32_t ell = static_cast<std::uint32_t>(state.range(0));
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < ell; ++i) count *= 3;
  std::vector<std::uint8_t> bits(count);
  for (std::uint64_t i = 0; i < count; ++i) bits[i] = mix64(i) & 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(recursive_majority(ell, bits));
  }
}
BENCHMARK(BM_RecursiveMajority)->Arg(4)->Arg(8);

void BM_PartitionEffect(benchmark::State& state) {
  const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
  const FitnessFunction fitness = parity_fitness(n, Rational(1, 5));
  std::vector<std::uint32_t> indices;
  for (std::uint32_t i = 1; i <= 7 && i <= n; ++i) indices.push_back(i);
  const IndexSet set = IndexSet::of(indices);
  for (auto _ : state) {
    benchmark::DoNotOptimize(partition_effect(fitness, set));
  }
}
BENCHMARK(BM_PartitionEffect)->Arg(7)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
