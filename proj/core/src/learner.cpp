#include "ugalearn/learner.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "ugalearn/errors.hpp"
#include "ugalearn/parallel.hpp"

namespace ugalearn {

GaConfig make_ga_config(GaPreset preset, std::uint32_t n, std::uint64_t seed) {
  GaConfig cfg;
  cfg.chromosome_length = n;
  cfg.mutation_rate = Rational(1, 250);  // 0.004
  cfg.seed = seed;
  switch (preset) {
    case GaPreset::paper:
      cfg.population_size = 1500;
      cfg.generations = 800;
      break;
    case GaPreset::fast:
      cfg.population_size = 200;
      cfg.generations = 200;
      break;
  }
  return cfg;
}

bool paper_validated_regime(const OracleSpec& spec, GaPreset preset) {
  return preset == GaPreset::paper && spec.k == 7 && spec.function == "parity" &&
         spec.eta == Rational(1, 5);
}

Hypothesis hypothesis_from_population(const Population& pop) {
  Hypothesis h(pop.length());
  for (std::uint32_t locus = 1; locus <= pop.length(); ++locus)
    if (!inside_band(one_frequency(pop, locus))) h.set(locus - 1, true);
  return h;
}

AttributewiseResult attributewise_learn(const OracleSpec& spec, const GaConfig& cfg) {
  const RunResult rr = run(spec, cfg, {});
  return {hypothesis_from_population(rr.final_population), rr.total_queries};
}

bool recursive_majority(std::uint32_t ell, std::span<const std::uint8_t> xs) {
  if (ell == 0) throw std::invalid_argument("recursive_majority: ell must be >= 1");
  std::uint64_t expect = 1;
  for (std::uint32_t i = 0; i < ell; ++i) expect *= 3;
  if (xs.size() != expect)
    throw std::invalid_argument("recursive_majority: input size must be 3^ell");
  if (ell == 1) return majority3(xs[0], xs[1], xs[2]);
  const std::uint64_t third = expect / 3;
  return majority3(recursive_majority(ell - 1, xs.subspan(0, third)),
                   recursive_majority(ell - 1, xs.subspan(third, third)),
                   recursive_majority(ell - 1, xs.subspan(2 * third, third)));
}

double recursive_majority_failure(std::uint32_t ell, double p) {
  double q = p;
  for (std::uint32_t i = 0; i < ell; ++i) q = majority_failure_once(q);
  return q;
}

BoostPlan boost_plan(std::uint64_t n, const Rational& epsilon) {
  if (n < 2) throw std::invalid_argument("boost_plan: n must be >= 2");
  if (epsilon.num == 0 || 8 * epsilon.num > epsilon.den)
    throw std::invalid_argument("boost_plan: epsilon must be in (0, 1/8]");

  const double c = std::log2(static_cast<double>(n)) + std::log2(static_cast<double>(epsilon.den)) -
                   std::log2(static_cast<double>(epsilon.num));
  // Smallest integer t with 2^t >= c; the ceil is nudged against rounding.
  double t = std::ceil(std::log2(c));
  while (t >= 1.0 && std::exp2(t - 1.0) >= c) t -= 1.0;
  while (std::exp2(t) < c) t += 1.0;

  BoostPlan plan;
  plan.epsilon = epsilon;
  plan.ell = static_cast<std::uint32_t>(t) + 1;
  if (plan.ell > 40) throw CapabilityError("boost_plan: 3^ell does not fit in 64 bits");
  plan.runs = 1;
  for (std::uint32_t i = 0; i < plan.ell; ++i) plan.runs *= 3;
  return plan;
}

LearnResult approx_learn_with(std::uint32_t n, const Rational& epsilon, std::uint64_t seed,
                              const SubLearner& sub, unsigned jobs) {
  const auto started = std::chrono::steady_clock::now();
  const BoostPlan plan = boost_plan(n, epsilon);

  std::vector<Hypothesis> hypotheses(plan.runs);
  std::uint64_t total_queries = 0;
  parallel_for_ordered<AttributewiseResult>(
      plan.runs, jobs,
      [&](std::uint64_t r) { return sub(r, split_seed(seed, r)); },
      [&](std::uint64_t r, AttributewiseResult&& res) {
        if (res.hypothesis.size() != n)
          throw std::invalid_argument("approx_learn: sub-hypothesis length mismatch");
        hypotheses[r] = std::move(res.hypothesis);
        total_queries += res.queries;
      });

  Hypothesis h(n);
  std::vector<std::uint8_t> column(plan.runs);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint64_t r = 0; r < plan.runs; ++r) column[r] = hypotheses[r].get(i);
    h.set(i, recursive_majority(plan.ell, column));
  }

  LearnResult result;
  result.hypothesis = std::move(h);
  result.total_queries = total_queries;
  result.plan = plan;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

LearnResult approx_learn(const OracleSpec& spec, const Rational& epsilon, std::uint64_t seed,
                         GaPreset preset, unsigned jobs) {
  spec.validate();
  return approx_learn_with(
      spec.n, epsilon, seed,
      [&](std::uint64_t, std::uint64_t sub_seed) {
        return attributewise_learn(spec, make_ga_config(preset, spec.n, sub_seed));
      },
      jobs);
}

}  // namespace ugalearn
