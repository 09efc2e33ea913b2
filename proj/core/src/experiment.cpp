#include "ugalearn/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ugalearn/errors.hpp"
#include "ugalearn/parallel.hpp"
#include "ugalearn/rng.hpp"

namespace ugalearn {

using nlohmann::json;

namespace {

json oracle_json(const OracleSpec& spec) {
  return json{{"n", spec.n},
              {"k", spec.k},
              {"K", spec.essential},
              {"f", spec.function},
              {"eta", spec.eta.str()}};
}

json ga_json(const GaConfig& ga) {
  return json{{"population_size", ga.population_size},
              {"chromosome_length", ga.chromosome_length},
              {"generations", ga.generations},
              {"mutation_rate", ga.mutation_rate.str()},
              {"master_seed", ga.seed}};
}

double finite_log10(double log10_value) {
  // JSON has no -inf; anything below double underflow is reported as -400.
  return std::isfinite(log10_value) ? log10_value : -400.0;
}

json report_json(const TestReport& r) {
  return json{{"null", r.null_name},
              {"observed_in_band", r.observed_in_band},
              {"trials", r.trials},
              {"p_value_log10", finite_log10(r.p_value_log10)},
              {"adjusted_alpha_log10", r.adjusted_alpha_log10},
              {"rejected", r.rejected},
              {"statistic", r.statistic},
              {"df", r.df}};
}

}  // namespace

void ExperimentConfig::validate() const {
  oracle.validate();
  ga.validate();
  if (oracle.n != ga.chromosome_length)
    throw std::invalid_argument("ExperimentConfig: oracle n != chromosome length");
  if (runs == 0) throw std::invalid_argument("ExperimentConfig: runs must be >= 1");
  std::uint32_t prev = 0;
  for (const std::uint32_t locus : tracked_loci) {
    if (locus <= prev || locus > oracle.n)
      throw std::invalid_argument("ExperimentConfig: tracked loci must be sorted, unique, in [1, n]");
    prev = locus;
  }
}

SimulationSummary run_simulation(const ExperimentConfig& cfg, std::ostream& csv_out) {
  cfg.validate();

  struct RunOutput {
    std::string csv;
    std::vector<LocusFrequency> final_freqs;
  };

  csv_out << "run_id,generation,locus,ones_count,m\n";

  SimulationSummary summary;
  summary.config = cfg;
  for (const std::uint32_t locus : cfg.tracked_loci) summary.final_band_counts[locus] = {};

  parallel_for_ordered<RunOutput>(
      cfg.runs, cfg.jobs,
      [&cfg](std::uint64_t r) {
        GaConfig ga = cfg.ga;
        ga.seed = split_seed(cfg.ga.seed, r);
        const RunResult rr = run(cfg.oracle, ga, cfg.tracked_loci);
        RunOutput out;
        out.csv.reserve(rr.traces.size() * cfg.tracked_loci.size() * 24);
        for (const GenerationTrace& trace : rr.traces) {
          for (const auto& [locus, freq] : trace.tracked) {
            out.csv += std::to_string(r);
            out.csv += ',';
            out.csv += std::to_string(trace.generation);
            out.csv += ',';
            out.csv += std::to_string(locus);
            out.csv += ',';
            out.csv += std::to_string(freq.ones);
            out.csv += ',';
            out.csv += std::to_string(freq.m);
            out.csv += '\n';
          }
        }
        if (!rr.traces.empty())
          for (const auto& [locus, freq] : rr.traces.back().tracked)
            out.final_freqs.push_back(freq);
        return out;
      },
      [&](std::uint64_t, RunOutput&& out) {
        csv_out << out.csv;
        for (std::size_t i = 0; i < cfg.tracked_loci.size(); ++i) {
          BandCount& bc = summary.final_band_counts[cfg.tracked_loci[i]];
          if (inside_band(out.final_freqs[i]))
            ++bc.inside;
          else
            ++bc.outside;
        }
      });
  return summary;
}

std::string summary_json(const SimulationSummary& summary) {
  const ExperimentConfig& cfg = summary.config;
  json bands = json::object();
  for (const auto& [locus, bc] : summary.final_band_counts)
    bands[std::to_string(locus)] = json{{"inside", bc.inside}, {"outside", bc.outside}};
  const json doc{{"oracle", oracle_json(cfg.oracle)},
                 {"ga", ga_json(cfg.ga)},
                 {"runs", cfg.runs},
                 {"tracked_loci", cfg.tracked_loci},
                 {"final_generation", cfg.ga.generations},
                 {"final_band_counts", bands}};
  return doc.dump(2) + "\n";
}

bool TraceTable::has(std::uint32_t locus, std::uint32_t generation) const {
  const auto it = ones.find(locus);
  return it != ones.end() && it->second.contains(generation);
}

TraceTable read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("trace csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "run_id,generation,locus,ones_count,m")
    throw std::invalid_argument("trace csv: unexpected header: " + line);

  TraceTable table;
  std::uint64_t max_run = 0;
  bool any = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::uint64_t fields[5];
    std::size_t pos = 0;
    for (int f = 0; f < 5; ++f) {
      std::size_t comma = f < 4 ? line.find(',', pos) : line.size();
      if (comma == std::string::npos) throw std::invalid_argument("trace csv: short row");
      fields[f] = std::stoull(line.substr(pos, comma - pos));
      pos = comma + 1;
    }
    const auto [run_id, gen, locus, ones_count, m] =
        std::tuple{fields[0], fields[1], fields[2], fields[3], fields[4]};
    if (table.m == 0)
      table.m = static_cast<std::uint32_t>(m);
    else if (table.m != m)
      throw std::invalid_argument("trace csv: inconsistent m");
    if (ones_count > m) throw std::invalid_argument("trace csv: ones_count above m");
    table.ones[static_cast<std::uint32_t>(locus)][static_cast<std::uint32_t>(gen)].push_back(
        static_cast<std::uint32_t>(ones_count));
    max_run = std::max(max_run, run_id);
    table.max_generation = std::max(table.max_generation, static_cast<std::uint32_t>(gen));
    any = true;
  }
  if (!any) throw std::invalid_argument("trace csv: no data rows");
  table.runs = static_cast<std::uint32_t>(max_run + 1);
  return table;
}

EmpiricalDistribution distribution_at(const TraceTable& table, std::uint32_t locus,
                                      std::uint32_t generation) {
  const auto locus_it = table.ones.find(locus);
  if (locus_it == table.ones.end())
    throw std::invalid_argument("trace table: locus " + std::to_string(locus) + " not tracked");
  const auto gen_it = locus_it->second.find(generation);
  if (gen_it == locus_it->second.end())
    throw std::invalid_argument("trace table: generation " + std::to_string(generation) +
                                " not present");
  EmpiricalDistribution dist;
  dist.m = table.m;
  for (const std::uint32_t ones : gen_it->second) dist.add(ones);
  return dist;
}

std::string stats_bundle_json(const TraceTable& table, const TraceTable* other,
                              const StatsRequest& request) {
  const std::uint32_t gen =
      request.generation == 0 ? table.max_generation : request.generation;
  const TraceTable& second = other ? *other : table;

  json reports = json::array();
  auto dist = [&](const TraceTable& t, std::uint32_t locus) {
    return distribution_at(t, locus, gen);
  };

  if (!request.essential_loci.empty() && !request.nonessential_loci.empty()) {
    const auto [ess, non] = global_null_test(dist(table, request.essential_loci.front()),
                                             dist(table, request.nonessential_loci.front()),
                                             request.alpha);
    json ess_j = report_json(ess);
    ess_j["locus"] = request.essential_loci.front();
    json non_j = report_json(non);
    non_j["locus"] = request.nonessential_loci.front();
    reports.push_back(ess_j);
    reports.push_back(non_j);
    json global{{"null", "H0_essential_or_nonessential"},
                {"rejected", ess.rejected && non.rejected},
                {"alpha_log10", std::log10(request.alpha)}};
    reports.push_back(global);
  }

  auto symmetry = [&](const char* name, std::uint32_t locus_a, std::uint32_t locus_b) {
    TestReport rep = symmetry_test(dist(table, locus_a), dist(second, locus_b), request.alpha);
    json j = report_json(rep);
    j["null"] = name;
    j["locus_a"] = locus_a;
    j["locus_b"] = locus_b;
    j["independent_samples"] = other != nullptr;
    reports.push_back(j);
  };
  if (request.essential_loci.size() >= 2)
    symmetry("H0_essential_pair_homogeneous", request.essential_loci[0],
             request.essential_loci[1]);
  if (request.nonessential_loci.size() >= 2)
    symmetry("H0_nonessential_pair_homogeneous", request.nonessential_loci[0],
             request.nonessential_loci[1]);
  if (!request.essential_loci.empty() && !request.nonessential_loci.empty())
    symmetry("H0_essential_vs_nonessential_homogeneous", request.essential_loci.front(),
             request.nonessential_loci.front());

  // Per-locus trajectories for Figure-style plots: per generation, the mean
  // 1-frequency and how many runs sit inside the band.
  json trajectories = json::object();
  for (const auto& [locus, by_gen] : table.ones) {
    json gens = json::array();
    json mean_freq = json::array();
    json inside = json::array();
    for (const auto& [g, counts] : by_gen) {
      double sum = 0.0;
      std::uint64_t in_band = 0;
      for (const std::uint32_t ones : counts) {
        sum += ones;
        if (inside_band({ones, table.m})) ++in_band;
      }
      gens.push_back(g);
      mean_freq.push_back(sum / (static_cast<double>(counts.size()) * table.m));
      inside.push_back(in_band);
    }
    trajectories[std::to_string(locus)] =
        json{{"generation", gens}, {"mean_frequency", mean_freq}, {"runs_inside_band", inside}};
  }

  const json doc{{"alpha", request.alpha},
                 {"generation", gen},
                 {"m", table.m},
                 {"runs", table.runs},
                 {"reports", reports},
                 {"band_trajectories", trajectories}};
  return doc.dump(2) + "\n";
}

std::string learn_result_json(const OracleSpec& spec, const LearnResult& result,
                              std::uint64_t master_seed, GaPreset preset) {
  const TargetConcept target = target_concept(spec);
  const json doc{{"oracle", oracle_json(spec)},
                 {"epsilon", result.plan.epsilon.str()},
                 {"ell", result.plan.ell},
                 {"runs", result.plan.runs},
                 {"hypothesis", result.hypothesis.str()},
                 {"target_concept", target.str()},
                 {"match", result.hypothesis == target},
                 {"total_queries", result.total_queries},
                 {"master_seed", master_seed},
                 {"preset", preset == GaPreset::paper ? "paper" : "fast"},
                 {"regime", paper_validated_regime(spec, preset) ? "paper-validated" : "unvalidated"},
                 {"wall_time_seconds", result.wall_seconds}};
  return doc.dump(2) + "\n";
}

std::string partition_effect_json(const PartitionEffect& effect, std::uint32_t n,
                                  const std::string& function, const Rational& eta) {
  json means = json::object();
  const std::size_t order = effect.index_set.order();
  for (std::size_t p = 0; p < effect.schema_means.size(); ++p) {
    std::string pattern(order, '0');
    for (std::size_t t = 0; t < order; ++t)
      if ((p >> t) & 1u) pattern[t] = '1';
    means[pattern] = effect.schema_means[p];
  }
  const json doc{{"n", n},
                 {"function", function},
                 {"eta", eta.str()},
                 {"index_set", effect.index_set.indices},
                 {"order", effect.index_set.order()},
                 {"effect", effect.effect},
                 {"global_mean", effect.global_mean},
                 {"schema_means", means}};
  return doc.dump(2) + "\n";
}

}  // namespace ugalearn
