#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "ugalearn/population.hpp"
#include "ugalearn/rational.hpp"

namespace ugalearn {

/// Observed distribution of a locus's ones-count over independent runs at a
/// fixed generation. Support is the discrete grid {0, 1/m, ..., 1} held as
/// exact counts.
struct EmpiricalDistribution {
  std::uint32_t m = 0;          // population size (denominator)
  std::uint32_t total_runs = 0; // sum of counts
  std::map<std::uint32_t, std::uint32_t> counts;  // ones-count -> #runs

  void add(std::uint32_t ones_count);
};

enum class BandMembership { inside_d_star, outside_d_star };

/// Strict open band (0.05, 0.95), decided on exact integers.
BandMembership band_membership(const LocusFrequency& freq);

/// log10 of the bound P(all N observations conform) < (1 - eps)^N.
/// Throws std::invalid_argument for N = 0 or eps outside (0, 1).
double null_p_value_bound_log10(const Rational& threshold_eps, std::uint64_t n_trials);

/// One hypothesis-test verdict. p_value_log10 and adjusted_alpha_log10 are
/// log10 values; rejected <=> p_value_log10 < adjusted_alpha_log10.
/// observed_in_band counts raw observations inside the band (both samples
/// pooled for two-sample tests). statistic/df are set by chi-square tests.
struct TestReport {
  std::string null_name;
  std::uint64_t observed_in_band = 0;
  std::uint64_t trials = 0;
  double p_value_log10 = 0.0;
  double adjusted_alpha_log10 = 0.0;
  bool rejected = false;
  double statistic = 0.0;
  std::uint32_t df = 0;
};

/// The paired null-hypothesis test on generation-final snapshots, Bonferroni
/// split alpha/2 per null with threshold 1/8:
///   H0_essential:    the essential locus lands inside the band with
///                    probability >= 1/8   (evidence: all N outside),
///   H0_nonessential: the nonessential locus lands outside with
///                    probability >= 1/8   (evidence: all N inside).
/// Any non-conforming observation voids the bound for its null and the
/// p-value is reported as 1 (the bound only covers the all-N case).
std::pair<TestReport, TestReport> global_null_test(const EmpiricalDistribution& essential,
                                                   const EmpiricalDistribution& nonessential,
                                                   double alpha);

/// Two-sample chi-square homogeneity test over binned ones-counts, adjacent
/// bins merged until every expected cell count is >= 5. The two samples must
/// come from independent run sets and share m. Throws CapabilityError when
/// there is too little data to bin.
TestReport symmetry_test(const EmpiricalDistribution& a, const EmpiricalDistribution& b,
                         double alpha);

/// Upper tail of the chi-square distribution: P(X >= statistic) for the given
/// degrees of freedom (regularized incomplete gamma Q(df/2, statistic/2)).
double chi_square_tail(double statistic, std::uint32_t df);

}  // namespace ugalearn
