#include "ugalearn/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ugalearn/errors.hpp"

namespace ugalearn {

namespace {

// Regularized lower incomplete gamma P(a, x) by series (valid for x < a + 1).
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 1000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by Lentz continued fraction
// (valid for x >= a + 1).
double gamma_q_cf(double a, double x) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double regularized_gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("regularized_gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double log10_or_neg_inf(double p) {
  return p > 0.0 ? std::log10(p) : -std::numeric_limits<double>::infinity();
}

}  // namespace

void EmpiricalDistribution::add(std::uint32_t ones_count) {
  if (ones_count > m) throw std::invalid_argument("EmpiricalDistribution: count above m");
  ++counts[ones_count];
  ++total_runs;
}

BandMembership band_membership(const LocusFrequency& freq) {
  return inside_band(freq) ? BandMembership::inside_d_star : BandMembership::outside_d_star;
}

double null_p_value_bound_log10(const Rational& threshold_eps, std::uint64_t n_trials) {
  if (n_trials == 0) throw std::invalid_argument("null_p_value_bound: N must be positive");
  if (threshold_eps.num == 0 || threshold_eps.num >= threshold_eps.den)
    throw std::invalid_argument("null_p_value_bound: eps must be in (0, 1)");
  // log10((1 - eps)^N), computed in log space so N up to 10^6 cannot underflow.
  const double log10_one_minus_eps =
      std::log10(static_cast<double>(threshold_eps.den - threshold_eps.num)) -
      std::log10(static_cast<double>(threshold_eps.den));
  return static_cast<double>(n_trials) * log10_one_minus_eps;
}

std::pair<TestReport, TestReport> global_null_test(const EmpiricalDistribution& essential,
                                                   const EmpiricalDistribution& nonessential,
                                                   double alpha) {
  if (essential.total_runs == 0 || nonessential.total_runs == 0)
    throw std::invalid_argument("global_null_test: empty distribution");
  if (alpha <= 0.0 || alpha >= 1.0)
    throw std::invalid_argument("global_null_test: alpha must be in (0, 1)");

  const Rational threshold(1, 8);
  const double adjusted = std::log10(alpha / 2.0);  // Bonferroni, two nulls

  auto in_band_observations = [](const EmpiricalDistribution& dist) {
    std::uint64_t inside = 0;
    for (const auto& [ones, runs] : dist.counts)
      if (band_membership({ones, dist.m}) == BandMembership::inside_d_star) inside += runs;
    return inside;
  };

  TestReport ess;
  ess.null_name = "H0_essential";
  ess.trials = essential.total_runs;
  ess.observed_in_band = in_band_observations(essential);
  ess.adjusted_alpha_log10 = adjusted;
  ess.p_value_log10 =
      ess.observed_in_band == 0 ? null_p_value_bound_log10(threshold, ess.trials) : 0.0;
  ess.rejected = ess.p_value_log10 < ess.adjusted_alpha_log10;

  TestReport non;
  non.null_name = "H0_nonessential";
  non.trials = nonessential.total_runs;
  non.observed_in_band = in_band_observations(nonessential);
  non.adjusted_alpha_log10 = adjusted;
  non.p_value_log10 = non.observed_in_band == non.trials
                          ? null_p_value_bound_log10(threshold, non.trials)
                          : 0.0;
  non.rejected = non.p_value_log10 < non.adjusted_alpha_log10;

  return {ess, non};
}

TestReport symmetry_test(const EmpiricalDistribution& a, const EmpiricalDistribution& b,
                         double alpha) {
  if (a.m != b.m) throw std::invalid_argument("symmetry_test: distributions disagree on m");
  if (alpha <= 0.0 || alpha >= 1.0)
    throw std::invalid_argument("symmetry_test: alpha must be in (0, 1)");
  const double na = a.total_runs;
  const double nb = b.total_runs;
  if (a.total_runs == 0 || b.total_runs == 0 || a.total_runs + b.total_runs < 10)
    throw CapabilityError("symmetry_test: too few runs to bin");

  // Column counts over the union support, in ones-count order.
  std::vector<std::pair<double, double>> columns;
  {
    auto ia = a.counts.begin();
    auto ib = b.counts.begin();
    while (ia != a.counts.end() || ib != b.counts.end()) {
      std::uint32_t key;
      if (ib == b.counts.end() || (ia != a.counts.end() && ia->first < ib->first))
        key = ia->first;
      else if (ia == a.counts.end() || ib->first < ia->first)
        key = ib->first;
      else
        key = ia->first;
      double ca = 0.0, cb = 0.0;
      if (ia != a.counts.end() && ia->first == key) ca = ia++->second;
      if (ib != b.counts.end() && ib->first == key) cb = ib++->second;
      columns.emplace_back(ca, cb);
    }
  }

  // Merge adjacent columns until every expected cell count reaches 5.
  const double total = na + nb;
  const double min_column = 5.0 * total / std::min(na, nb);
  std::vector<std::pair<double, double>> bins;
  double accum_a = 0.0, accum_b = 0.0;
  for (const auto& [ca, cb] : columns) {
    accum_a += ca;
    accum_b += cb;
    if (accum_a + accum_b >= min_column) {
      bins.emplace_back(accum_a, accum_b);
      accum_a = accum_b = 0.0;
    }
  }
  if (accum_a + accum_b > 0.0) {
    if (bins.empty())
      bins.emplace_back(accum_a, accum_b);
    else {
      bins.back().first += accum_a;
      bins.back().second += accum_b;
    }
  }

  TestReport report;
  report.null_name = "H0_homogeneous";
  report.trials = a.total_runs + b.total_runs;
  report.adjusted_alpha_log10 = std::log10(alpha);
  for (const auto& [ones, runs] : a.counts)
    if (band_membership({ones, a.m}) == BandMembership::inside_d_star)
      report.observed_in_band += runs;
  for (const auto& [ones, runs] : b.counts)
    if (band_membership({ones, b.m}) == BandMembership::inside_d_star)
      report.observed_in_band += runs;

  double chi2 = 0.0;
  for (const auto& [ca, cb] : bins) {
    const double col = ca + cb;
    const double ea = col * na / total;
    const double eb = col * nb / total;
    chi2 += (ca - ea) * (ca - ea) / ea + (cb - eb) * (cb - eb) / eb;
  }
  report.statistic = chi2;
  report.df = bins.size() > 1 ? static_cast<std::uint32_t>(bins.size() - 1) : 0;

  const double p = report.df == 0 ? 1.0 : chi_square_tail(chi2, report.df);
  report.p_value_log10 = log10_or_neg_inf(p);
  report.rejected = report.p_value_log10 < report.adjusted_alpha_log10;
  return report;
}

double chi_square_tail(double statistic, std::uint32_t df) {
  if (df == 0) throw std::invalid_argument("chi_square_tail: df must be positive");
  if (statistic < 0.0) throw std::invalid_argument("chi_square_tail: negative statistic");
  return regularized_gamma_q(0.5 * df, 0.5 * statistic);
}

}  // namespace ugalearn
