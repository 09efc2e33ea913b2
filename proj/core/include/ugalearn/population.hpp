#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ugalearn/rng.hpp"

namespace ugalearn {

/// Fixed-length bit vector, packed 64 bits per word, LSB-first within a word.
/// Bit i of the string is bit (i % 64) of word (i / 64); unused high bits of
/// the last word are kept zero.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::uint32_t n) : n_(n), words_((n + 63) / 64, 0) {}

  /// Parses a string of '0'/'1' characters, leftmost character = bit 0.
  static BitString from_string(std::string_view text);

  std::uint32_t size() const { return n_; }

  bool get(std::uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  void set(std::uint32_t i, bool v) {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (v)
      words_[i >> 6] |= bit;
    else
      words_[i >> 6] &= ~bit;
  }

  void flip(std::uint32_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  std::uint32_t count_ones() const;

  /// Mask for the valid bits of the last word (all ones when n % 64 == 0).
  std::uint64_t tail_mask() const {
    const std::uint32_t rem = n_ & 63;
    return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
  }

  std::string str() const;

  bool operator==(const BitString&) const = default;

 private:
  std::uint32_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Hypotheses and target concepts are plain length-n bit vectors.
using Chromosome = BitString;
using Hypothesis = BitString;
using TargetConcept = BitString;

/// 1-frequency of a locus as an exact count over the population size, so that
/// membership in the drift band can be decided by integer comparison.
struct LocusFrequency {
  std::uint32_t ones = 0;  // rows with bit 1 at the locus
  std::uint32_t m = 0;     // population size

  double value() const { return static_cast<double>(ones) / static_cast<double>(m); }
  bool operator==(const LocusFrequency&) const = default;
};

/// True iff the frequency lies strictly inside the open band (0.05, 0.95),
/// decided exactly: 20 * ones > m and 20 * ones < 19 * m.
constexpr bool inside_band(const LocusFrequency& f) {
  const std::uint64_t lhs = std::uint64_t{20} * f.ones;
  return lhs > f.m && lhs < std::uint64_t{19} * f.m;
}

/// m-by-n bit matrix; each row is one chromosome. Immutable in normal use:
/// the GA produces a fresh Population per generation, so sharing a const
/// reference across threads is safe.
class Population {
 public:
  Population(std::uint32_t m, std::uint32_t n);

  std::uint32_t rows() const { return m_; }
  std::uint32_t length() const { return n_; }
  std::uint32_t words_per_row() const { return words_per_row_; }

  bool bit(std::uint32_t row, std::uint32_t i) const {
    const std::uint64_t w = data_[static_cast<std::size_t>(row) * words_per_row_ + (i >> 6)];
    return (w >> (i & 63)) & 1u;
  }

  std::span<const std::uint64_t> row_words(std::uint32_t row) const {
    return {data_.data() + static_cast<std::size_t>(row) * words_per_row_, words_per_row_};
  }
  std::span<std::uint64_t> row_words(std::uint32_t row) {
    return {data_.data() + static_cast<std::size_t>(row) * words_per_row_, words_per_row_};
  }

  BitString row(std::uint32_t r) const;
  void set_row(std::uint32_t r, const BitString& bits);

  std::uint64_t tail_mask() const;

  /// One row per line, characters '0'/'1', trailing newline.
  std::string to_text() const;
  static Population from_text(std::string_view text);

  bool operator==(const Population&) const = default;

 private:
  std::uint32_t m_ = 0;
  std::uint32_t n_ = 0;
  std::uint32_t words_per_row_ = 0;
  std::vector<std::uint64_t> data_;
};

/// Count of ones at `locus` (1-based, per the usual [n] indexing of loci).
/// Throws std::out_of_range for locus outside [1, n].
LocusFrequency one_frequency(const Population& pop, std::uint32_t locus);

/// Fresh population with every bit i.i.d. Bernoulli(1/2). Draws are keyed per
/// (row, locus) on the init stream of `rng`; see uga.hpp for the exact keying
/// equations. Throws std::invalid_argument when m or n is zero.
Population random_population(std::uint32_t m, std::uint32_t n, const CounterRng& rng);

/// As above, with bit draws re-keyed per locus (locus_keys[i] is the 1-based
/// draw key for position i). Used by the locus-permutation machinery.
Population random_population_keyed(std::uint32_t m, std::uint32_t n, const CounterRng& rng,
                                   std::span<const std::uint32_t> locus_keys);

}  // namespace ugalearn
