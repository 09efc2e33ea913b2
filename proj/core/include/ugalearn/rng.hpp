#pragma once

#include <cstdint>

#include "ugalearn/rational.hpp"

namespace ugalearn {

/// 64-bit finalizer with full avalanche (the murmur3 fmix64 constants).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

/// Derives the seed of run `index` from a master seed. This function is part
/// of the output contract (identical master seed -> identical per-run seeds)
/// and must stay stable across versions:
///
///   split_seed(s, i) = mix64(s XOR 0x9e3779b97f4a7c15 * (i + 1))
constexpr std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(master ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
}

/// Labels the independent random streams a genetic-algorithm run consumes.
enum class Phase : std::uint64_t {
  init = 1,          // initial population bits
  oracle_noise = 2,  // classification-error coin per fitness evaluation
  selection = 3,     // roulette draws
  crossover = 4,     // crossover mask bits
  mutation = 5,      // mutation mask bits
  generic = 6,       // anything outside the per-generation loop
};

/// Counter-based generator: every value is a pure function of
/// (seed, generation, phase, a, b). There is no hidden state, so runs are
/// reproducible, trivially parallel, and draws can be re-keyed per locus,
/// which is what makes the locus-permutation equivariance of the GA testable
/// as an exact assertion rather than a distributional one.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) noexcept
      : base_(mix64(seed ^ 0x9e3779b97f4a7c15ULL)) {}

  /// A (generation, phase) sub-stream with the expensive part of the key
  /// already mixed in.
  class Stream {
   public:
    constexpr std::uint64_t draw(std::uint64_t a, std::uint64_t b = 0) const noexcept {
      return mix64(prefix_ + a * 0xd6e8feb86659fd93ULL + b * 0xa0761d6478bd642fULL);
    }

   private:
    friend class CounterRng;
    explicit constexpr Stream(std::uint64_t prefix) noexcept : prefix_(prefix) {}
    std::uint64_t prefix_;
  };

  constexpr Stream stream(std::uint64_t generation, Phase phase) const noexcept {
    return Stream(mix64(base_ ^ (generation * 0xbf58476d1ce4e5b9ULL) ^
                        (static_cast<std::uint64_t>(phase) * 0x94d049bb133111ebULL)));
  }

  constexpr std::uint64_t draw(std::uint64_t generation, Phase phase, std::uint64_t a,
                               std::uint64_t b = 0) const noexcept {
    return stream(generation, phase).draw(a, b);
  }

 private:
  std::uint64_t base_;
};

/// Sequential draws from one sub-stream (draw index is the counter).
class RandomStream {
 public:
  explicit constexpr RandomStream(CounterRng::Stream stream) noexcept : stream_(stream) {}
  constexpr std::uint64_t next() noexcept { return stream_.draw(index_++); }

 private:
  CounterRng::Stream stream_;
  std::uint64_t index_ = 0;
};

/// Exact-threshold Bernoulli(p) from one uniform 64-bit word: true iff
/// u * den < num * 2^64. The realized probability is ceil(num * 2^64 / den) /
/// 2^64, i.e. within 2^-64 of p and exactly p when p is dyadic.
constexpr bool bernoulli(std::uint64_t u, const Rational& p) noexcept {
  return static_cast<std::uint64_t>(
             (static_cast<unsigned __int128>(u) * p.den) >> 64) < p.num;
}

/// Uniform index in [0, bound) by fixed-point multiply (bias < bound / 2^64).
constexpr std::uint64_t uniform_below(std::uint64_t u, std::uint64_t bound) noexcept {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(u) * bound) >> 64);
}

/// Uniform double in [0, 1) with 53 random bits.
constexpr double unit_double(std::uint64_t u) noexcept {
  return static_cast<double>(u >> 11) * 0x1.0p-53;
}

}  // namespace ugalearn
