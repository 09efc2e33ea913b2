#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ugalearn/population.hpp"
#include "ugalearn/rational.hpp"
#include "ugalearn/rng.hpp"

namespace ugalearn {

/// Counts oracle queries. Runs own their counter; concurrent runs merge by
/// summation afterwards.
struct QueryCounter {
  std::uint64_t count = 0;
};

/// Boolean functions available to the oracle, keyed by name. Only "parity"
/// ships; tests may register others.
using BoolFunction = std::function<bool(const BitString&)>;
void register_bool_function(const std::string& name, BoolFunction fn);
const BoolFunction& find_bool_function(const std::string& name);

/// Membership-query oracle over n attributes of which the k listed in
/// `essential` matter; answers f(projection) but lies with probability eta.
struct OracleSpec {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::vector<std::uint32_t> essential;  // K: strictly increasing, 1-based
  std::string function = "parity";
  Rational eta;  // classification error, in (0, 1/2)

  /// Throws std::invalid_argument if any model constraint is violated
  /// (|K| == k, k < n, indices within [1, n] strictly increasing,
  /// 0 < eta < 1/2, known function name).
  void validate() const;

  /// Key-value round trip (keys: n, k, K, f, eta_num, eta_den).
  std::string to_config() const;
  static OracleSpec from_config(std::string_view text);

  bool operator==(const OracleSpec&) const = default;
};

/// y = bits of x at the (1-based, sorted) indices in K, in index order.
BitString project(const BitString& x, std::span<const std::uint32_t> K);

/// 1 iff an odd number of ones. Throws on empty input.
bool parity(const BitString& y);

/// c*: bit i-1 set iff i is in K.
TargetConcept target_concept(const OracleSpec& spec);

/// One oracle query: f(projection of x onto K), negated with probability eta.
/// Advances `rng` by one draw and `counter` by one. Noise is fresh per call;
/// querying the same x twice re-flips independently.
bool query(const OracleSpec& spec, const BitString& x, RandomStream& rng, QueryCounter& counter);

/// Evaluation-ready oracle: precomputes the projection masks so the parity
/// path is a popcount per row word.
class NoisyOracle {
 public:
  explicit NoisyOracle(OracleSpec spec);

  const OracleSpec& spec() const { return spec_; }

  bool noiseless(const BitString& x) const;
  bool noiseless_row(std::span<const std::uint64_t> row_words) const;

  /// Same contract as ugalearn::query, with the noise word supplied by the
  /// caller (the GA keys it per (generation, row)).
  bool query_with_noise(std::span<const std::uint64_t> row_words, std::uint64_t noise_word,
                        QueryCounter& counter) const;

 private:
  OracleSpec spec_;
  std::vector<std::uint64_t> masks_;  // per-word projection masks
  bool parity_path_ = false;
  const BoolFunction* fn_ = nullptr;
};

}  // namespace ugalearn
