#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ugalearn/oracle.hpp"
#include "ugalearn/population.hpp"
#include "ugalearn/rational.hpp"
#include "ugalearn/rng.hpp"

namespace ugalearn {

/// Parameters of one genetic-algorithm run. The generator is counter-based,
/// and every random draw the run makes is keyed as follows (positions p and
/// rows are 0-based; key(p) = p unless locus_keys is set, in which case
/// key(p) = locus_keys[p] - 1):
///
///   init bit (row, p)        = bit key(p)%64 of draw(gen 0, init,      row, key(p)/64)
///   fitness noise (gen, row) =                  draw(gen,   noise,     row)
///   selection draw (gen, i)  =                  draw(gen,   selection, i)
///   crossover bit (gen,row,p)= bit key(p)%64 of draw(gen,   crossover, row, key(p)/64)
///   mutation flip (gen,row,p)= bernoulli(p_m,   draw(gen,   mutation,  row, key(p)))
///
/// Keying mask bits by locus rather than by draw order is what makes the
/// uniform operators free of positional bias in a checkable way: permuting
/// all loci together with K and routing the draw keys through the inverse
/// permutation reproduces the permuted run bit for bit.
struct GaConfig {
  std::uint32_t population_size = 0;   // m
  std::uint32_t chromosome_length = 0; // n
  std::uint32_t generations = 0;       // tau
  Rational mutation_rate;              // p_m, in [0, 1)
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> locus_keys;  // empty = identity; else n 1-based keys

  /// Throws std::invalid_argument unless m >= 2, tau >= 1, p_m < 1 and
  /// locus_keys (when present) has one in-range key per locus.
  void validate() const;
};

/// Tracked 1-frequencies of one generation, sorted by locus (1-based).
struct GenerationTrace {
  std::uint32_t generation = 0;
  std::vector<std::pair<std::uint32_t, LocusFrequency>> tracked;
};

/// Fitness-proportionate (roulette) selection of `count` row indices, with
/// replacement. All-zero fitness degenerates to uniform selection. Negative
/// fitness throws std::invalid_argument.
std::vector<std::uint32_t> select_parents(std::span<const double> fitness, std::uint32_t count,
                                          RandomStream& rng);

/// Child bit j = a's bit j where mask j is 1, else b's bit j.
BitString uniform_crossover(const BitString& a, const BitString& b, const BitString& mask);

/// Bitwise XOR of x with the mutation mask.
BitString mutate(const BitString& x, const BitString& mask);

/// One full generation: evaluate all m rows through the oracle (exactly m
/// queries), select 2m parents, cross parent i with parent i+m into child i,
/// mutate every child. `generation` must be >= 1; it keys the random streams.
Population step(const Population& pop, const NoisyOracle& oracle, const GaConfig& cfg,
                const CounterRng& rng, std::uint32_t generation, QueryCounter& counter);

struct RunResult {
  Population final_population;
  std::vector<GenerationTrace> traces;  // one entry per generation 1..tau
  std::uint64_t total_queries = 0;      // always m * tau
};

/// tau generations from a fresh random population. Tracked loci (1-based) are
/// recorded after every generation.
RunResult run(const OracleSpec& spec, const GaConfig& cfg,
              std::span<const std::uint32_t> tracked_loci);

}  // namespace ugalearn
