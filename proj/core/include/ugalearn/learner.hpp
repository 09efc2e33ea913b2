#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ugalearn/oracle.hpp"
#include "ugalearn/population.hpp"
#include "ugalearn/rational.hpp"
#include "ugalearn/uga.hpp"

namespace ugalearn {

/// GA parameter presets for the attributewise learner.
///
/// `paper` (m = 1500, tau = 800, p_m = 1/250) is the regime whose per-bit
/// error bound of 1/8 is backed by the statistical evidence; it spends
/// exactly 1,200,000 queries per run. `fast` (m = 200, tau = 200) exists for
/// quick CI runs only — its error rate has no certificate until measured with
/// the stats module, and results produced with it are flagged unvalidated.
enum class GaPreset { paper, fast };

GaConfig make_ga_config(GaPreset preset, std::uint32_t n, std::uint64_t seed);

/// True when (spec, preset) is the regime the evidence covers:
/// k = 7, f = parity, eta = 1/5, paper preset.
bool paper_validated_regime(const OracleSpec& spec, GaPreset preset);

/// Runs the GA and reads a hypothesis off the final population: bit i is 0
/// when the 1-frequency of locus i is strictly inside (0.05, 0.95), else 1.
struct AttributewiseResult {
  Hypothesis hypothesis;
  std::uint64_t queries = 0;
};
AttributewiseResult attributewise_learn(const OracleSpec& spec, const GaConfig& cfg);

/// The band rule alone (exposed for tests).
Hypothesis hypothesis_from_population(const Population& pop);

/// Mode of three bits.
constexpr bool majority3(bool a, bool b, bool c) {
  return (static_cast<int>(a) + static_cast<int>(b) + static_cast<int>(c)) >= 2;
}

/// Depth-ell ternary majority tree over exactly 3^ell bits.
bool recursive_majority(std::uint32_t ell, std::span<const std::uint8_t> xs);

/// Failure probability of one 3-way majority vote when each input fails
/// independently with probability p.
constexpr double majority_failure_once(double p) { return p * p * p + 3.0 * p * p * (1.0 - p); }

/// Exact failure probability of the depth-ell tree under i.i.d. per-input
/// failure p, by iterating the one-level recurrence.
double recursive_majority_failure(std::uint32_t ell, double p);

/// Boosting plan: ell = ceil(log2(log2 n + log2(1/epsilon))) + 1, which
/// guarantees n / 2^(2^ell) < epsilon. Requires n >= 2 and
/// 0 < epsilon <= 1/8.
struct BoostPlan {
  std::uint32_t ell = 0;
  std::uint64_t runs = 0;  // 3^ell
  Rational epsilon;
};
BoostPlan boost_plan(std::uint64_t n, const Rational& epsilon);

/// Produces one sub-hypothesis; arguments are (run index, derived seed).
using SubLearner = std::function<AttributewiseResult(std::uint64_t, std::uint64_t)>;

struct LearnResult {
  Hypothesis hypothesis;
  std::uint64_t total_queries = 0;
  BoostPlan plan;
  double wall_seconds = 0.0;
};

/// Boosted learner: 3^ell independent sub-learner runs (seeded via
/// split_seed(seed, run)), then a per-position recursive majority vote.
/// Sub-runs execute on `jobs` worker threads; the result is independent of
/// the thread count.
LearnResult approx_learn_with(std::uint32_t n, const Rational& epsilon, std::uint64_t seed,
                              const SubLearner& sub, unsigned jobs = 1);

/// The real thing: sub-learner = attributewise_learn with the given preset.
LearnResult approx_learn(const OracleSpec& spec, const Rational& epsilon, std::uint64_t seed,
                         GaPreset preset = GaPreset::paper, unsigned jobs = 1);

}  // namespace ugalearn
