#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ugalearn/learner.hpp"

using namespace ugalearn;

namespace {

OracleSpec paper_spec(std::uint32_t n = 8) {
  OracleSpec spec;
  spec.n = n;
  spec.k = 7;
  spec.essential = {1, 2, 3, 4, 5, 6, 7};
  spec.eta = Rational(1, 5);
  return spec;
}

}  // namespace

TEST_CASE("majority3 returns the mode") {
  CHECK(majority3(1, 1, 0) == 1);
  CHECK(majority3(0, 0, 1) == 0);
  CHECK(majority3(1, 1, 1) == 1);
  CHECK(majority3(0, 0, 0) == 0);
  CHECK(majority3(0, 1, 1) == 1);
  CHECK(majority3(1, 0, 0) == 0);
}

TEST_CASE("recursive majority folds in equal thirds") {
  const std::vector<std::uint8_t> depth1{0, 1, 1};
  CHECK(recursive_majority(1, depth1) == 1);

  const std::vector<std::uint8_t> zeros(9, 0);
  CHECK(recursive_majority(2, zeros) == 0);

  // majority3(maj(1,1,0), maj(0,0,1), maj(1,0,1)) = majority3(1, 0, 1) = 1
  const std::vector<std::uint8_t> depth2{1, 1, 0, 0, 0, 1, 1, 0, 1};
  CHECK(recursive_majority(2, depth2) == 1);

  CHECK_THROWS_AS(recursive_majority(0, depth1), std::invalid_argument);
  const std::vector<std::uint8_t> short_input{1, 0};
  CHECK_THROWS_AS(recursive_majority(1, short_input), std::invalid_argument);
}

TEST_CASE("recursive majority is symmetric in its thirds and label-flips") {
  const CounterRng rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint8_t> bits(27);
    for (int i = 0; i < 27; ++i)
      bits[i] = (rng.draw(0, Phase::generic, trial, i) >> 13) & 1u;
    const bool base = recursive_majority(3, bits);

    // Rotate the three thirds.
    std::vector<std::uint8_t> rotated(27);
    for (int i = 0; i < 27; ++i) rotated[i] = bits[(i + 9) % 27];
    CHECK(recursive_majority(3, rotated) == base);

    // Complementing every input complements the output.
    std::vector<std::uint8_t> flipped(27);
    for (int i = 0; i < 27; ++i) flipped[i] = 1 - bits[i];
    CHECK(recursive_majority(3, flipped) == !base);
  }
}

TEST_CASE("one-level failure bound checked by exhaustive enumeration") {
  // All 8 outcomes of three independent bits, P(bit = 0) = p: the majority
  // fails exactly on {000, 100, 010, 001}, so q = p^3 + 3 p^2 (1 - p) < 4 p^2.
  for (const double p : {0.01, 0.05, 0.1, 0.12, 0.125}) {
    double enumerated = 0.0;
    for (int outcome = 0; outcome < 8; ++outcome) {
      double prob = 1.0;
      int zeros = 0;
      for (int b = 0; b < 3; ++b) {
        if ((outcome >> b) & 1) {
          prob *= 1.0 - p;
        } else {
          prob *= p;
          ++zeros;
        }
      }
      if (zeros >= 2) enumerated += prob;
    }
    CHECK(enumerated == doctest::Approx(majority_failure_once(p)).epsilon(1e-12));
    CHECK(enumerated < 4.0 * p * p);
  }
}

TEST_CASE("depth-2 failure from the recurrence matches direct enumeration") {
  // 2^9 assignments of nine i.i.d. bits, each 0 with probability p.
  const double p = 0.125;
  double enumerated = 0.0;
  for (int outcome = 0; outcome < 512; ++outcome) {
    std::vector<std::uint8_t> bits(9);
    double prob = 1.0;
    for (int b = 0; b < 9; ++b) {
      bits[b] = (outcome >> b) & 1;
      prob *= bits[b] ? (1.0 - p) : p;
    }
    if (!recursive_majority(2, bits)) enumerated += prob;
  }
  CHECK(enumerated == doctest::Approx(recursive_majority_failure(2, p)).epsilon(1e-12));
}

TEST_CASE("tree failure probabilities satisfy the amplification bounds") {
  for (const double p : {0.01, 0.05, 0.125}) {
    for (std::uint32_t ell = 1; ell <= 3; ++ell) {
      const double q = recursive_majority_failure(ell, p);
      const double exponent = std::exp2(static_cast<double>(ell));  // 2^ell
      CHECK(q < std::pow(4.0, exponent - 1.0) * std::pow(p, exponent));
    }
  }
  for (std::uint32_t ell = 1; ell <= 3; ++ell) {
    const double q = recursive_majority_failure(ell, 0.125);
    CHECK(q < std::exp2(-std::exp2(static_cast<double>(ell))));  // 1 / 2^(2^ell)
  }
}

TEST_CASE("boost plan chooses the smallest sufficient depth") {
  const BoostPlan at_8 = boost_plan(8, Rational(1, 8));
  CHECK(at_8.ell == 4);  // ceil(log2(3 + 3)) + 1
  CHECK(at_8.runs == 81);

  const BoostPlan at_2 = boost_plan(2, Rational(1, 8));
  CHECK(at_2.ell == 3);  // ceil(log2(1 + 3)) + 1
  CHECK(at_2.runs == 27);

  CHECK_THROWS_AS(boost_plan(1, Rational(1, 8)), std::invalid_argument);
  CHECK_THROWS_AS(boost_plan(8, Rational(1, 4)), std::invalid_argument);
  CHECK_THROWS_AS(boost_plan(8, Rational(0, 8)), std::invalid_argument);
}

TEST_CASE("boost plan guarantees n / 2^(2^ell) < epsilon") {
  const CounterRng rng(777);
  const auto stream = rng.stream(0, Phase::generic);
  for (std::uint64_t trial = 0; trial < 2000; ++trial) {
    const std::uint64_t n = 2 + uniform_below(stream.draw(trial, 0), 1'000'000'000ull - 2);
    // epsilon uniform-ish in (0, 1/8) as a rational d/(8d + r + 1).
    const std::uint64_t d = 1 + uniform_below(stream.draw(trial, 1), 1'000'000);
    const std::uint64_t r = uniform_below(stream.draw(trial, 2), 8 * d);
    const Rational epsilon(d, 8 * d + r + 1);
    const BoostPlan plan = boost_plan(n, epsilon);
    const double lhs_log2 = std::log2(static_cast<double>(n)) -
                            std::exp2(static_cast<double>(plan.ell));
    const double eps_log2 = std::log2(epsilon.value());
    CHECK(lhs_log2 < eps_log2);
  }
}

TEST_CASE("band rule maps final frequencies to hypothesis bits") {
  Population pop(1500, 3);
  // Locus 1 stays all-zero: outside the band -> bit 1.
  // Locus 2 at 750/1500: inside -> bit 0.
  // Locus 3 at exactly 75/1500 = 0.05: outside (strict) -> bit 1.
  for (std::uint32_t r = 0; r < 750; ++r) {
    BitString row(3);
    row.set(1, true);
    if (r < 75) row.set(2, true);
    pop.set_row(r, row);
  }
  CHECK(hypothesis_from_population(pop).str() == "101");
}

TEST_CASE("attributewise learner runs the fast preset end to end") {
  const OracleSpec spec = paper_spec();
  const GaConfig cfg = make_ga_config(GaPreset::fast, spec.n, 31337);
  const AttributewiseResult res = attributewise_learn(spec, cfg);
  CHECK(res.queries == 200ull * 200ull);
  CHECK(res.hypothesis.size() == 8);
}

TEST_CASE("attributewise learner at the paper preset spends exactly 1.2M queries") {
  const OracleSpec spec = paper_spec();
  const AttributewiseResult res =
      attributewise_learn(spec, make_ga_config(GaPreset::paper, spec.n, 8086));
  CHECK(res.queries == 1'200'000ull);
}

TEST_CASE("paper preset is the validated regime") {
  CHECK(paper_validated_regime(paper_spec(), GaPreset::paper));
  CHECK_FALSE(paper_validated_regime(paper_spec(), GaPreset::fast));
  OracleSpec other_eta = paper_spec();
  other_eta.eta = Rational(1, 4);
  CHECK_FALSE(paper_validated_regime(other_eta, GaPreset::paper));
  const GaConfig cfg = make_ga_config(GaPreset::paper, 8, 0);
  CHECK(cfg.population_size == 1500);
  CHECK(cfg.generations == 800);
  CHECK(cfg.mutation_rate == Rational(1, 250));
}

TEST_CASE("boosted learner with a constant mock returns that hypothesis") {
  const Hypothesis fixed = BitString::from_string("0101");
  const LearnResult res = approx_learn_with(
      4, Rational(1, 8), 9,
      [&](std::uint64_t, std::uint64_t) { return AttributewiseResult{fixed, 7}; }, 2);
  CHECK(res.hypothesis == fixed);
  CHECK(res.plan.ell == 4);  // ceil(log2(2 + 3)) + 1
  CHECK(res.plan.runs == 81);
  CHECK(res.total_queries == res.plan.runs * 7);
}

TEST_CASE("boosted learner against a mock with exact per-bit error 1/8") {
  // Per-bit sub-learner error exactly 1/8 is the worst case the plan covers:
  // whole-hypothesis failure must come out below epsilon (expected rate here
  // is n / 2^(2^ell) = 8 / 65536, so ~0.12 failures per 1000 trials).
  const std::uint32_t n = 8;
  const Hypothesis target = BitString::from_string("11111110");
  const Rational eighth(1, 8);
  std::uint64_t failures = 0;
  const std::uint64_t trials = 1000;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const LearnResult res = approx_learn_with(
        n, eighth, t,
        [&](std::uint64_t run_index, std::uint64_t sub_seed) {
          Hypothesis h = target;
          const CounterRng rng(sub_seed);
          const auto stream = rng.stream(0, Phase::generic);
          for (std::uint32_t bit = 0; bit < n; ++bit)
            if (bernoulli(stream.draw(run_index, bit), eighth)) h.flip(bit);
          return AttributewiseResult{h, 1};
        },
        2);
    if (res.hypothesis != target) ++failures;
  }
  CHECK(static_cast<double>(failures) / static_cast<double>(trials) < 0.125);
  CHECK(failures <= 3);
}

TEST_CASE("sub-run seeds derive from the master seed") {
  // Two boosted runs with the same master seed see identical sub-seeds.
  std::vector<std::uint64_t> seen_a, seen_b;
  auto recorder = [](std::vector<std::uint64_t>& sink) {
    return [&sink](std::uint64_t, std::uint64_t sub_seed) {
      sink.push_back(sub_seed);
      return AttributewiseResult{BitString(2), 0};
    };
  };
  (void)approx_learn_with(2, Rational(1, 8), 1234, recorder(seen_a), 1);
  (void)approx_learn_with(2, Rational(1, 8), 1234, recorder(seen_b), 1);
  CHECK(seen_a == seen_b);
  CHECK(seen_a.size() == 27);
  for (std::size_t r = 0; r < seen_a.size(); ++r) CHECK(seen_a[r] == split_seed(1234, r));
}
