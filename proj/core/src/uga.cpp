#include "ugalearn/uga.hpp"

#include <algorithm>
#include <stdexcept>

namespace ugalearn {

void GaConfig::validate() const {
  if (population_size < 2) throw std::invalid_argument("GaConfig: population size must be >= 2");
  if (chromosome_length == 0) throw std::invalid_argument("GaConfig: chromosome length must be >= 1");
  if (generations == 0) throw std::invalid_argument("GaConfig: generations must be >= 1");
  if (mutation_rate.num >= mutation_rate.den && mutation_rate.num != 0)
    throw std::invalid_argument("GaConfig: mutation rate must be in [0, 1)");
  if (!locus_keys.empty()) {
    if (locus_keys.size() != chromosome_length)
      throw std::invalid_argument("GaConfig: locus_keys size mismatch");
    for (const std::uint32_t k : locus_keys)
      if (k < 1 || k > chromosome_length)
        throw std::invalid_argument("GaConfig: locus key outside [1, n]");
  }
}

std::vector<std::uint32_t> select_parents(std::span<const double> fitness, std::uint32_t count,
                                          RandomStream& rng) {
  if (fitness.empty()) throw std::invalid_argument("select_parents: empty fitness");
  const std::uint32_t m = static_cast<std::uint32_t>(fitness.size());

  double total = 0.0;
  bool equal_nonzero = true;
  double nonzero = 0.0;
  for (const double f : fitness) {
    if (f < 0.0) throw std::invalid_argument("select_parents: negative fitness");
    total += f;
    if (f != 0.0) {
      if (nonzero == 0.0)
        nonzero = f;
      else if (f != nonzero)
        equal_nonzero = false;
    }
  }

  std::vector<std::uint32_t> picked(count);
  if (total == 0.0) {
    for (std::uint32_t i = 0; i < count; ++i)
      picked[i] = static_cast<std::uint32_t>(uniform_below(rng.next(), m));
    return picked;
  }

  if (equal_nonzero) {
    // Equal weights on the support (the 0/1 oracle-fitness case): roulette is
    // uniform over the supporting rows, no cumulative search needed.
    std::vector<std::uint32_t> support;
    support.reserve(m);
    for (std::uint32_t i = 0; i < m; ++i)
      if (fitness[i] != 0.0) support.push_back(i);
    for (std::uint32_t i = 0; i < count; ++i)
      picked[i] = support[uniform_below(rng.next(), support.size())];
    return picked;
  }

  std::vector<double> cumulative(fitness.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < fitness.size(); ++i) {
    acc += fitness[i];
    cumulative[i] = acc;
  }
  for (std::uint32_t i = 0; i < count; ++i) {
    const double r = unit_double(rng.next()) * total;
    const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), r);
    picked[i] = static_cast<std::uint32_t>(
        std::min<std::ptrdiff_t>(it - cumulative.begin(), m - 1));
  }
  return picked;
}

BitString uniform_crossover(const BitString& a, const BitString& b, const BitString& mask) {
  if (a.size() != b.size() || a.size() != mask.size())
    throw std::invalid_argument("uniform_crossover: length mismatch");
  BitString child(a.size());
  for (std::size_t w = 0; w < child.words().size(); ++w)
    child.words()[w] = (a.words()[w] & mask.words()[w]) | (b.words()[w] & ~mask.words()[w]);
  if (!child.words().empty()) child.words().back() &= child.tail_mask();
  return child;
}

BitString mutate(const BitString& x, const BitString& mask) {
  if (x.size() != mask.size()) throw std::invalid_argument("mutate: length mismatch");
  BitString out(x.size());
  for (std::size_t w = 0; w < out.words().size(); ++w)
    out.words()[w] = x.words()[w] ^ mask.words()[w];
  return out;
}

Population step(const Population& pop, const NoisyOracle& oracle, const GaConfig& cfg,
                const CounterRng& rng, std::uint32_t generation, QueryCounter& counter) {
  const std::uint32_t m = pop.rows();
  const std::uint32_t n = pop.length();
  if (m != cfg.population_size || n != cfg.chromosome_length)
    throw std::invalid_argument("step: population shape does not match config");
  if (n != oracle.spec().n) throw std::invalid_argument("step: oracle n mismatch");
  if (generation == 0) throw std::invalid_argument("step: generation must be >= 1");

  // Evaluate: one query per row, noise keyed by row.
  std::vector<double> fitness(m);
  {
    const auto noise = rng.stream(generation, Phase::oracle_noise);
    for (std::uint32_t r = 0; r < m; ++r)
      fitness[r] = oracle.query_with_noise(pop.row_words(r), noise.draw(r), counter) ? 1.0 : 0.0;
  }

  // 2m roulette draws; child i pairs parents[i] with parents[i + m].
  RandomStream selection(rng.stream(generation, Phase::selection));
  const std::vector<std::uint32_t> parents = select_parents(fitness, 2 * m, selection);

  Population next(m, n);
  const std::uint32_t wpr = pop.words_per_row();
  const std::uint64_t tail = pop.tail_mask();
  const auto cross = rng.stream(generation, Phase::crossover);
  const auto mut = rng.stream(generation, Phase::mutation);
  const bool identity_keys = cfg.locus_keys.empty();

  for (std::uint32_t r = 0; r < m; ++r) {
    const auto a = pop.row_words(parents[r]);
    const auto b = pop.row_words(parents[r + m]);
    auto child = next.row_words(r);
    if (identity_keys) {
      for (std::uint32_t w = 0; w < wpr; ++w) {
        const std::uint64_t mask = cross.draw(r, w);
        child[w] = (a[w] & mask) | (b[w] & ~mask);
      }
      child[wpr - 1] &= tail;
    } else {
      for (std::uint32_t p = 0; p < n; ++p) {
        const std::uint32_t key = cfg.locus_keys[p] - 1;
        const bool from_a = (cross.draw(r, key >> 6) >> (key & 63)) & 1u;
        const std::uint64_t src = from_a ? a[p >> 6] : b[p >> 6];
        if ((src >> (p & 63)) & 1u) child[p >> 6] |= std::uint64_t{1} << (p & 63);
      }
    }
    if (cfg.mutation_rate.num != 0) {
      for (std::uint32_t p = 0; p < n; ++p) {
        const std::uint32_t key = identity_keys ? p : cfg.locus_keys[p] - 1;
        if (bernoulli(mut.draw(r, key), cfg.mutation_rate))
          child[p >> 6] ^= std::uint64_t{1} << (p & 63);
      }
    }
  }
  return next;
}

RunResult run(const OracleSpec& spec, const GaConfig& cfg,
              std::span<const std::uint32_t> tracked_loci) {
  spec.validate();
  cfg.validate();
  if (spec.n != cfg.chromosome_length)
    throw std::invalid_argument("run: oracle n != chromosome length");
  for (const std::uint32_t locus : tracked_loci)
    if (locus < 1 || locus > spec.n) throw std::out_of_range("run: tracked locus outside [1, n]");

  const CounterRng rng(cfg.seed);
  const NoisyOracle oracle(spec);
  QueryCounter counter;

  Population pop =
      random_population_keyed(cfg.population_size, cfg.chromosome_length, rng, cfg.locus_keys);

  RunResult result{Population(1, 1), {}, 0};
  result.traces.reserve(cfg.generations);
  for (std::uint32_t g = 1; g <= cfg.generations; ++g) {
    pop = step(pop, oracle, cfg, rng, g, counter);
    GenerationTrace trace;
    trace.generation = g;
    trace.tracked.reserve(tracked_loci.size());
    for (const std::uint32_t locus : tracked_loci)
      trace.tracked.emplace_back(locus, one_frequency(pop, locus));
    result.traces.push_back(std::move(trace));
  }
  result.final_population = std::move(pop);
  result.total_queries = counter.count;
  return result;
}

}  // namespace ugalearn
