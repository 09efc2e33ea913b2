#include "ugalearn/schema.hpp"

#include <algorithm>
#include <bit>
#include <memory>
#include <stdexcept>

#include "ugalearn/errors.hpp"

namespace ugalearn {

namespace {

constexpr std::uint32_t kMaxExhaustiveN = 24;

void check_exhaustive(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("schema: n must be positive");
  if (n > kMaxExhaustiveN)
    throw CapabilityError("schema: exhaustive analysis is limited to n <= 24");
}

double apply_eta(double f, const Rational& eta) {
  const double e = eta.value();
  return e + (1.0 - 2.0 * e) * f;
}

}  // namespace

IndexSet IndexSet::of(std::vector<std::uint32_t> indices) {
  std::sort(indices.begin(), indices.end());
  IndexSet set{std::move(indices)};
  for (std::size_t i = 1; i < set.indices.size(); ++i)
    if (set.indices[i] == set.indices[i - 1])
      throw std::invalid_argument("IndexSet: duplicate index");
  return set;
}

void IndexSet::validate(std::uint32_t n) const {
  std::uint32_t prev = 0;
  for (const std::uint32_t i : indices) {
    if (i <= prev || i > n) throw std::invalid_argument("IndexSet: indices must be strictly increasing within [1, n]");
    prev = i;
  }
}

FitnessFunction parity_fitness(std::uint32_t n, const Rational& eta) {
  if (n == 0) throw std::invalid_argument("parity_fitness: n must be positive");
  if (2 * eta.num > eta.den) throw std::invalid_argument("parity_fitness: eta must be <= 1/2");
  return {n, [eta](std::uint64_t point) {
            return apply_eta(static_cast<double>(std::popcount(point) & 1), eta);
          }};
}

FitnessFunction table_fitness(std::uint32_t n, std::vector<double> table, const Rational& eta) {
  check_exhaustive(n);
  if (table.size() != (std::uint64_t{1} << n))
    throw std::invalid_argument("table_fitness: table size must be 2^n");
  auto shared = std::make_shared<std::vector<double>>(std::move(table));
  return {n, [shared, eta](std::uint64_t point) { return apply_eta((*shared)[point], eta); }};
}

double schema_mean(const FitnessFunction& fitness, const IndexSet& set, std::uint64_t pattern) {
  check_exhaustive(fitness.n);
  set.validate(fitness.n);
  const std::size_t order = set.order();
  if (order < 64 && pattern >> order)
    throw std::invalid_argument("schema_mean: pattern wider than the index set");

  // Base point with the fixed bits in place, then enumerate the free loci.
  std::uint64_t fixed = 0;
  for (std::size_t t = 0; t < order; ++t)
    if ((pattern >> t) & 1u) fixed |= std::uint64_t{1} << (set.indices[t] - 1);

  std::vector<std::uint32_t> free_bits;
  free_bits.reserve(fitness.n - order);
  std::size_t next = 0;
  for (std::uint32_t j = 0; j < fitness.n; ++j) {
    if (next < order && set.indices[next] == j + 1)
      ++next;
    else
      free_bits.push_back(j);
  }

  const std::uint64_t completions = std::uint64_t{1} << free_bits.size();
  double sum = 0.0;
  for (std::uint64_t c = 0; c < completions; ++c) {
    std::uint64_t point = fixed;
    for (std::size_t b = 0; b < free_bits.size(); ++b)
      if ((c >> b) & 1u) point |= std::uint64_t{1} << free_bits[b];
    sum += fitness.value(point);
  }
  return sum / static_cast<double>(completions);
}

PartitionEffect partition_effect(const FitnessFunction& fitness, const IndexSet& set) {
  check_exhaustive(fitness.n);
  set.validate(fitness.n);
  const std::size_t order = set.order();
  const std::uint64_t patterns = std::uint64_t{1} << order;

  // One pass over the whole space, bucketing by the pattern of the fixed loci.
  std::vector<double> sums(patterns, 0.0);
  const std::uint64_t points = std::uint64_t{1} << fitness.n;
  for (std::uint64_t point = 0; point < points; ++point) {
    std::uint64_t pattern = 0;
    for (std::size_t t = 0; t < order; ++t)
      pattern |= ((point >> (set.indices[t] - 1)) & 1u) << t;
    sums[pattern] += fitness.value(point);
  }

  const double per_schema = static_cast<double>(points >> order);
  PartitionEffect out;
  out.index_set = set;
  out.schema_means.resize(patterns);
  double total = 0.0;
  for (std::uint64_t p = 0; p < patterns; ++p) {
    out.schema_means[p] = sums[p] / per_schema;
    total += sums[p];
  }
  out.global_mean = total / static_cast<double>(points);
  double var = 0.0;
  for (const double mean : out.schema_means) {
    const double d = mean - out.global_mean;
    var += d * d;
  }
  out.effect = var / static_cast<double>(patterns);
  return out;
}

unsigned __int128 count_partitions(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw std::invalid_argument("count_partitions: requires 0 <= k <= n");
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  constexpr unsigned __int128 kMax = ~static_cast<unsigned __int128>(0);
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t factor = n - k + i;
    if (r > kMax / factor) throw CapabilityError("count_partitions: value exceeds 128 bits");
    r = r * factor / i;  // exact: r*(n-k+i) is divisible by i here
  }
  return r;
}

std::string u128_to_string(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v > 0) {
    out.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace ugalearn
