#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ugalearn/learner.hpp"
#include "ugalearn/oracle.hpp"
#include "ugalearn/schema.hpp"
#include "ugalearn/stats.hpp"
#include "ugalearn/uga.hpp"

namespace ugalearn {

/// A batch of independent GA runs. Run r uses seed split_seed(ga.seed, r);
/// ga.seed is the master seed.
struct ExperimentConfig {
  OracleSpec oracle;
  GaConfig ga;
  std::uint32_t runs = 1;
  std::vector<std::uint32_t> tracked_loci;  // 1-based, sorted unique
  unsigned jobs = 1;

  void validate() const;
};

struct BandCount {
  std::uint64_t inside = 0;
  std::uint64_t outside = 0;
};

struct SimulationSummary {
  ExperimentConfig config;
  std::map<std::uint32_t, BandCount> final_band_counts;  // per tracked locus
};

/// Runs the batch and streams the trace CSV (header
/// run_id,generation,locus,ones_count,m; rows ordered by run, generation,
/// locus). Output bytes are a pure function of the config — independent of
/// the number of worker threads.
SimulationSummary run_simulation(const ExperimentConfig& cfg, std::ostream& csv_out);

/// JSON document embedding the full resolved config, the master seed, and the
/// per-locus band counts of the final generation. Keys are stable.
std::string summary_json(const SimulationSummary& summary);

/// Parsed trace CSV: per locus, per generation, the ones-counts in run order.
struct TraceTable {
  std::uint32_t m = 0;
  std::uint32_t runs = 0;
  std::uint32_t max_generation = 0;
  std::map<std::uint32_t, std::map<std::uint32_t, std::vector<std::uint32_t>>> ones;

  bool has(std::uint32_t locus, std::uint32_t generation) const;
};
TraceTable read_trace_csv(std::istream& in);

EmpiricalDistribution distribution_at(const TraceTable& table, std::uint32_t locus,
                                      std::uint32_t generation);

/// Inputs of the stats command.
struct StatsRequest {
  double alpha = 1e-100;
  std::vector<std::uint32_t> essential_loci;
  std::vector<std::uint32_t> nonessential_loci;
  std::uint32_t generation = 0;  // 0 = final generation in the table
};

/// Test-report bundle plus per-locus band trajectories (plot-ready). When a
/// second table is supplied, the two-sample symmetry tests draw their first
/// sample from `table` and their second from `other` so the run sets are
/// independent; otherwise both samples come from `table` (flagged in the
/// output, since the homogeneity test assumes independent run sets).
std::string stats_bundle_json(const TraceTable& table, const TraceTable* other,
                              const StatsRequest& request);

std::string learn_result_json(const OracleSpec& spec, const LearnResult& result,
                              std::uint64_t master_seed, GaPreset preset);

std::string partition_effect_json(const PartitionEffect& effect, std::uint32_t n,
                                  const std::string& function, const Rational& eta);

}  // namespace ugalearn
