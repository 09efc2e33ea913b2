#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ugalearn/rational.hpp"

namespace ugalearn {

/// Index set defining a schema partition: sorted, unique, 1-based indices.
/// |indices| is the fineness order of the partition.
struct IndexSet {
  std::vector<std::uint32_t> indices;

  static IndexSet of(std::vector<std::uint32_t> indices);
  void validate(std::uint32_t n) const;
  std::size_t order() const { return indices.size(); }
};

/// Fitness function over {0,1}^n given by point index: locus j (1-based) is
/// bit j-1 of the index. Evaluations must be cheap; the analyzer enumerates
/// all 2^n points.
struct FitnessFunction {
  std::uint32_t n = 0;
  std::function<double(std::uint64_t)> value;
};

/// Full-string parity with the classification error folded in analytically:
/// value(x) = eta + (1 - 2 eta) * parity(x). Use eta = 0 for the noiseless
/// function.
FitnessFunction parity_fitness(std::uint32_t n, const Rational& eta);

/// Explicit value table of size 2^n, same point encoding; eta applied as
/// above to 0/1 tables (and by the same affine map to any table).
FitnessFunction table_fitness(std::uint32_t n, std::vector<double> table, const Rational& eta);

/// Mean fitness over all completions of the schema that fixes the bits at
/// `set` to `pattern` (pattern bit t corresponds to the t-th smallest index).
/// Exhaustive; throws CapabilityError when n > 24.
double schema_mean(const FitnessFunction& fitness, const IndexSet& set, std::uint64_t pattern);

/// The effect of a schema partition: variance of the schema means under
/// uniform 1/2^|set| weights.
struct PartitionEffect {
  IndexSet index_set;
  double effect = 0.0;
  double global_mean = 0.0;
  std::vector<double> schema_means;  // indexed by pattern value
};
PartitionEffect partition_effect(const FitnessFunction& fitness, const IndexSet& set);

/// Number of schema partitions of fineness order k: C(n, k), exact.
/// Throws CapabilityError if the value does not fit in 128 bits.
unsigned __int128 count_partitions(std::uint64_t n, std::uint64_t k);

std::string u128_to_string(unsigned __int128 v);

}  // namespace ugalearn
