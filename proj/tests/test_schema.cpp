#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ugalearn/errors.hpp"
#include "ugalearn/rng.hpp"
#include "ugalearn/schema.hpp"

using namespace ugalearn;

namespace {

const Rational kNoiseless(0, 1);

FitnessFunction constant_fitness(std::uint32_t n, double c) {
  return {n, [c](std::uint64_t) { return c; }};
}

// Reference mean: literal average over the whole space, filtering points that
// match the pattern. Independent of the bucketing pass in partition_effect.
double mean_by_filter(const FitnessFunction& f, const IndexSet& set, std::uint64_t pattern) {
  double sum = 0.0;
  std::uint64_t matched = 0;
  for (std::uint64_t point = 0; point < (std::uint64_t{1} << f.n); ++point) {
    bool match = true;
    for (std::size_t t = 0; t < set.order(); ++t) {
      const bool bit = (point >> (set.indices[t] - 1)) & 1u;
      if (bit != (((pattern >> t) & 1u) != 0)) {
        match = false;
        break;
      }
    }
    if (match) {
      sum += f.value(point);
      ++matched;
    }
  }
  REQUIRE(matched == (std::uint64_t{1} << (f.n - set.order())));
  return sum / static_cast<double>(matched);
}

}  // namespace

TEST_CASE("schema mean of a constant function is the constant") {
  const FitnessFunction f = constant_fitness(6, 0.75);
  const IndexSet set = IndexSet::of({2, 5});
  for (std::uint64_t pattern = 0; pattern < 4; ++pattern)
    CHECK(schema_mean(f, set, pattern) == 0.75);
}

TEST_CASE("schema mean of parity on a proper subset is exactly one half") {
  // n = 3 parity, fixing locus 1 to 1: completions 1*00,1*01 style — two of
  // the four are odd.
  const FitnessFunction f = parity_fitness(3, kNoiseless);
  const IndexSet set = IndexSet::of({1});
  CHECK(schema_mean(f, set, 1) == 0.5);
  CHECK(schema_mean(f, set, 0) == 0.5);
  CHECK(schema_mean(f, set, 1) == mean_by_filter(f, set, 1));
}

TEST_CASE("full-order schema mean is the fitness of the single point") {
  const FitnessFunction f = parity_fitness(4, kNoiseless);
  const IndexSet set = IndexSet::of({1, 2, 3, 4});
  CHECK(schema_mean(f, set, 0b0000) == 0.0);
  CHECK(schema_mean(f, set, 0b0001) == 1.0);
  CHECK(schema_mean(f, set, 0b0111) == 1.0);
  CHECK(schema_mean(f, set, 0b1111) == 0.0);
}

TEST_CASE("schema means agree with the filtering oracle on random tables") {
  const CounterRng rng(8);
  const auto stream = rng.stream(0, Phase::generic);
  const std::uint32_t n = 6;
  std::vector<double> table(1u << n);
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = unit_double(stream.draw(7, i));
  const FitnessFunction f = table_fitness(n, table, kNoiseless);
  const IndexSet set = IndexSet::of({2, 3, 6});
  const PartitionEffect effect = partition_effect(f, set);
  for (std::uint64_t pattern = 0; pattern < 8; ++pattern) {
    const double expected = mean_by_filter(f, set, pattern);
    CHECK(effect.schema_means[pattern] == doctest::Approx(expected).epsilon(1e-12));
    CHECK(schema_mean(f, set, pattern) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("empty index set and constant functions have zero effect") {
  const FitnessFunction c = constant_fitness(5, 0.3);
  CHECK(partition_effect(c, IndexSet::of({})).effect == 0.0);
  CHECK(partition_effect(c, IndexSet::of({1, 4})).effect == 0.0);
  const FitnessFunction f = parity_fitness(5, kNoiseless);
  CHECK(partition_effect(f, IndexSet::of({})).effect == 0.0);
}

TEST_CASE("noiseless parity: full partition effect 1/4, all proper subsets 0") {
  const FitnessFunction f = parity_fitness(7, kNoiseless);
  const IndexSet full = IndexSet::of({1, 2, 3, 4, 5, 6, 7});
  const PartitionEffect top = partition_effect(f, full);
  CHECK(top.effect == 0.25);  // exact in binary floating point
  CHECK(top.global_mean == 0.5);

  // All 127 proper nonempty subsets: every schema mean is exactly 0.5.
  for (std::uint32_t mask = 1; mask < 127; ++mask) {
    std::vector<std::uint32_t> indices;
    for (std::uint32_t b = 0; b < 7; ++b)
      if ((mask >> b) & 1u) indices.push_back(b + 1);
    CHECK(partition_effect(f, IndexSet::of(indices)).effect == 0.0);
  }
}

TEST_CASE("analytic classification error scales the effect by (1-2eta)^2") {
  const FitnessFunction noisy = parity_fitness(7, Rational(1, 5));
  const IndexSet full = IndexSet::of({1, 2, 3, 4, 5, 6, 7});
  const PartitionEffect effect = partition_effect(noisy, full);
  CHECK(std::fabs(effect.effect - 0.09) < 1e-12);  // 0.36 * 0.25
  for (std::uint32_t b = 1; b <= 7; ++b) {
    const PartitionEffect sub = partition_effect(noisy, IndexSet::of({b}));
    CHECK(std::fabs(sub.effect) < 1e-15);
  }
}

TEST_CASE("effect grows monotonically along index-set chains") {
  // Coarsening averages points that used to sit in different schemata, so the
  // variance of the means can only drop. 200 random tables, random chains.
  const CounterRng rng(606);
  const auto stream = rng.stream(0, Phase::generic);
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    const std::uint32_t n = 4 + static_cast<std::uint32_t>(uniform_below(stream.draw(trial, 0), 5));
    std::vector<double> table(std::uint64_t{1} << n);
    for (std::size_t i = 0; i < table.size(); ++i)
      table[i] = unit_double(stream.draw(trial * 1000 + 1, i));
    const FitnessFunction f = table_fitness(n, table, kNoiseless);

    // Random superset, then a random proper subset of it.
    std::vector<std::uint32_t> superset;
    for (std::uint32_t b = 1; b <= n; ++b)
      if (stream.draw(trial * 1000 + 2, b) & 1u) superset.push_back(b);
    if (superset.empty()) superset.push_back(1);
    std::vector<std::uint32_t> subset;
    for (const std::uint32_t b : superset)
      if (stream.draw(trial * 1000 + 3, b) & 1u) subset.push_back(b);

    const double coarse = partition_effect(f, IndexSet::of(subset)).effect;
    const double fine = partition_effect(f, IndexSet::of(superset)).effect;
    CHECK(coarse <= fine + 1e-12);
  }
}

TEST_CASE("effect is invariant under consistent relabeling") {
  const std::uint32_t n = 6;
  const CounterRng rng(77);
  const auto stream = rng.stream(0, Phase::generic);
  std::vector<double> table(1u << n);
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = unit_double(stream.draw(0, i));

  // Swap loci 2 and 5 in both the table and the index set.
  auto swapped_point = [](std::uint64_t point) {
    const std::uint64_t b2 = (point >> 1) & 1u;
    const std::uint64_t b5 = (point >> 4) & 1u;
    point &= ~((std::uint64_t{1} << 1) | (std::uint64_t{1} << 4));
    return point | (b5 << 1) | (b2 << 4);
  };
  std::vector<double> relabeled(table.size());
  for (std::uint64_t p = 0; p < table.size(); ++p) relabeled[swapped_point(p)] = table[p];

  const FitnessFunction f = table_fitness(n, table, kNoiseless);
  const FitnessFunction g = table_fitness(n, relabeled, kNoiseless);
  const double before = partition_effect(f, IndexSet::of({2, 3})).effect;
  const double after = partition_effect(g, IndexSet::of({5, 3})).effect;
  CHECK(before == doctest::Approx(after).epsilon(1e-12));
}

TEST_CASE("partition counting is exact") {
  CHECK(count_partitions(10, 0) == 1);
  CHECK(count_partitions(10, 1) == 10);
  CHECK(count_partitions(10, 10) == 1);
  CHECK(count_partitions(5, 2) == 10);
  CHECK(count_partitions(52, 5) == 2'598'960);  // poker hands
  // C(10^6, 2) = 499999500000, on the order of 10^11.
  CHECK(count_partitions(1'000'000, 2) == 499'999'500'000ull);
  CHECK(u128_to_string(count_partitions(1'000'000, 2)) == "499999500000");
  // Orders of magnitude for k = 3, 4, 5 at n = 10^6: 10^17, 10^22, 10^28.
  CHECK(u128_to_string(count_partitions(1'000'000, 3)).size() == 18);
  CHECK(u128_to_string(count_partitions(1'000'000, 4)).size() == 23);
  CHECK(u128_to_string(count_partitions(1'000'000, 5)).size() == 28);
  CHECK_THROWS_AS(count_partitions(3, 4), std::invalid_argument);
}

TEST_CASE("capability limits are enforced") {
  CHECK_THROWS_AS(partition_effect(constant_fitness(25, 0.0), IndexSet::of({1})),
                  CapabilityError);
  CHECK_THROWS_AS(count_partitions(1'000'000'000'000ull, 20), CapabilityError);
  CHECK_THROWS_AS(table_fitness(3, std::vector<double>(4, 0.0), kNoiseless),
                  std::invalid_argument);
  const FitnessFunction f = parity_fitness(5, kNoiseless);
  CHECK_THROWS_AS(partition_effect(f, IndexSet::of({6})), std::invalid_argument);
}
