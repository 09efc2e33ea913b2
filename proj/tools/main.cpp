// ugalearn: simulate a uniform-crossover GA against a noisy parity oracle,
// boost it into a whole-hypothesis learner, test the run statistics, and
// measure schema-partition effects by brute force.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ugalearn/errors.hpp"
#include "ugalearn/experiment.hpp"
#include "ugalearn/learner.hpp"
#include "ugalearn/oracle.hpp"
#include "ugalearn/schema.hpp"
#include "ugalearn/uga.hpp"

namespace {

using namespace ugalearn;

constexpr int kExitBadArguments = 2;
constexpr int kExitCapability = 3;

/// Parses "1..7", "2,4,9", or mixes like "1,3..5,9" into sorted unique
/// 1-based indices.
std::vector<std::uint32_t> parse_indices(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string token = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (token.empty()) continue;
    const std::size_t dots = token.find("..");
    if (dots == std::string::npos) {
      out.push_back(static_cast<std::uint32_t>(std::stoul(token)));
    } else {
      const std::uint32_t lo = static_cast<std::uint32_t>(std::stoul(token.substr(0, dots)));
      const std::uint32_t hi = static_cast<std::uint32_t>(std::stoul(token.substr(dots + 2)));
      if (hi < lo) throw std::invalid_argument("bad index range: " + token);
      for (std::uint32_t i = lo; i <= hi; ++i) out.push_back(i);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw std::invalid_argument("empty index list");
  return out;
}

/// Flat key-value config: `name = value` lines, '#' comments, names matching
/// the long option names. Applied after parsing, so anything given on the
/// command line wins over the file.
void apply_flat_config(CLI::App& sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::string line;
  auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    const auto last = s.find_last_not_of(" \t\r");
    return first == std::string::npos ? std::string() : s.substr(first, last - first + 1);
  };
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (!trim(line).empty()) throw std::invalid_argument("config line is not key = value: " + line);
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    CLI::Option* op = sub.get_option_no_throw("--" + key);
    if (op == nullptr) throw std::invalid_argument("unknown config key: " + key);
    if (op->count() > 0) continue;
    op->add_result(value);
    op->run_callback();
  }
}

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
}

struct SimulateArgs {
  std::uint32_t n = 8;
  std::uint32_t k = 0;  // 0 = derive from K
  std::string K = "1..7";
  std::string eta = "1/5";
  std::uint32_t pop_size = 1500;
  std::uint32_t generations = 800;
  std::string mutation_rate = "0.004";
  std::uint32_t runs = 1;
  std::uint64_t seed = 1;
  std::string track_loci;
  std::string out = "-";
  unsigned jobs = std::thread::hardware_concurrency();
};

int cmd_simulate(const SimulateArgs& args) {
  ExperimentConfig cfg;
  cfg.oracle.n = args.n;
  cfg.oracle.essential = parse_indices(args.K);
  cfg.oracle.k = args.k == 0 ? static_cast<std::uint32_t>(cfg.oracle.essential.size()) : args.k;
  cfg.oracle.eta = Rational::parse(args.eta);
  cfg.ga.population_size = args.pop_size;
  cfg.ga.chromosome_length = args.n;
  cfg.ga.generations = args.generations;
  cfg.ga.mutation_rate = Rational::parse(args.mutation_rate);
  cfg.ga.seed = args.seed;
  cfg.runs = args.runs;
  cfg.jobs = args.jobs == 0 ? 1 : args.jobs;
  if (!args.track_loci.empty()) cfg.tracked_loci = parse_indices(args.track_loci);
  cfg.validate();

  SimulationSummary summary;
  if (args.out.empty() || args.out == "-") {
    summary = run_simulation(cfg, std::cout);
    std::cerr << summary_json(summary);
  } else {
    std::ofstream csv(args.out, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot open for writing: " + args.out);
    summary = run_simulation(cfg, csv);
    write_or_print(args.out + ".summary.json", summary_json(summary));
  }
  return 0;
}

struct LearnArgs {
  std::uint32_t n = 8;
  std::string K = "1..7";
  std::string eta = "1/5";
  std::string epsilon = "1/8";
  std::uint64_t seed = 1;
  std::string preset = "paper";
  std::string out = "-";
  unsigned jobs = std::thread::hardware_concurrency();
};

int cmd_learn(const LearnArgs& args) {
  OracleSpec spec;
  spec.n = args.n;
  spec.essential = parse_indices(args.K);
  spec.k = static_cast<std::uint32_t>(spec.essential.size());
  spec.eta = Rational::parse(args.eta);
  spec.validate();
  const GaPreset preset = args.preset == "fast" ? GaPreset::fast : GaPreset::paper;
  const LearnResult result = approx_learn(spec, Rational::parse(args.epsilon), args.seed, preset,
                                          args.jobs == 0 ? 1 : args.jobs);
  write_or_print(args.out, learn_result_json(spec, result, args.seed, preset));
  return 0;
}

struct StatsArgs {
  std::string csv;
  std::string csv_b;
  double alpha = 1e-100;
  std::string essential = "1";
  std::string nonessential;
  std::uint32_t generation = 0;
  std::string out = "-";
};

int cmd_stats(const StatsArgs& args) {
  std::ifstream in(args.csv, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + args.csv);
  const TraceTable table = read_trace_csv(in);

  TraceTable table_b;
  const TraceTable* other = nullptr;
  if (!args.csv_b.empty()) {
    std::ifstream in_b(args.csv_b, std::ios::binary);
    if (!in_b) throw std::runtime_error("cannot open: " + args.csv_b);
    table_b = read_trace_csv(in_b);
    other = &table_b;
  }

  StatsRequest request;
  request.alpha = args.alpha;
  request.generation = args.generation;
  if (!args.essential.empty()) request.essential_loci = parse_indices(args.essential);
  if (!args.nonessential.empty()) request.nonessential_loci = parse_indices(args.nonessential);
  write_or_print(args.out, stats_bundle_json(table, other, request));
  return 0;
}

struct SchemaArgs {
  std::uint32_t n = 7;
  std::string function = "parity";
  std::string table_path;
  std::string index_set = "1..7";
  std::string eta = "0/1";
  std::string out = "-";
};

int cmd_schema_effect(const SchemaArgs& args) {
  const Rational eta = Rational::parse(args.eta);
  FitnessFunction fitness;
  if (args.function == "parity") {
    fitness = parity_fitness(args.n, eta);
  } else if (args.function == "table-file") {
    if (args.table_path.empty())
      throw std::invalid_argument("--function table-file requires --table");
    std::ifstream in(args.table_path);
    if (!in) throw std::runtime_error("cannot open: " + args.table_path);
    std::vector<double> values;
    double v;
    while (in >> v) values.push_back(v);
    fitness = table_fitness(args.n, std::move(values), eta);
  } else {
    throw std::invalid_argument("--function must be parity or table-file");
  }
  const IndexSet set = IndexSet::of(parse_indices(args.index_set));
  const PartitionEffect effect = partition_effect(fitness, set);
  write_or_print(args.out, partition_effect_json(effect, args.n, args.function, eta));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GA-as-learner workbench: uniform-crossover GA runs, boosted parity learning, "
               "hypothesis tests, schema-partition effects"};
  app.require_subcommand(1);

  std::string config_path;
  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Run seeded GA runs and write a trace CSV");
  simulate->add_option("--config", config_path, "Flat key = value config file");
  simulate->add_option("--n", sim.n, "Chromosome length");
  simulate->add_option("--k", sim.k, "Number of essential attributes (default: |K|)");
  simulate->add_option("--K", sim.K, "Essential indices, e.g. 1..7 or 2,4,9");
  simulate->add_option("--eta", sim.eta, "Oracle error, rational or decimal");
  simulate->add_option("--pop-size", sim.pop_size, "Population size m");
  simulate->add_option("--generations", sim.generations, "Generations tau");
  simulate->add_option("--mutation-rate", sim.mutation_rate, "Per-bit mutation probability");
  simulate->add_option("--runs", sim.runs, "Independent runs");
  simulate->add_option("--seed", sim.seed, "Master seed");
  simulate->add_option("--track-loci", sim.track_loci, "Loci to trace, e.g. 1,8");
  simulate->add_option("--out", sim.out, "CSV path ('-' = stdout)");
  simulate->add_option("--jobs", sim.jobs, "Worker threads");

  LearnArgs learn;
  CLI::App* learn_cmd = app.add_subcommand("learn", "Boosted attributewise learning of K");
  learn_cmd->add_option("--config", config_path, "Flat key = value config file");
  learn_cmd->add_option("--n", learn.n, "Total attributes");
  learn_cmd->add_option("--K", learn.K, "Essential indices (defines the oracle)");
  learn_cmd->add_option("--eta", learn.eta, "Oracle error");
  learn_cmd->add_option("--epsilon", learn.epsilon, "Target failure probability, in (0, 1/8]");
  learn_cmd->add_option("--seed", learn.seed, "Master seed");
  learn_cmd->add_option("--preset", learn.preset, "GA preset: paper or fast")
      ->check(CLI::IsMember({"paper", "fast"}));
  learn_cmd->add_option("--out", learn.out, "JSON path ('-' = stdout)");
  learn_cmd->add_option("--jobs", learn.jobs, "Worker threads");

  StatsArgs stats;
  CLI::App* stats_cmd = app.add_subcommand("stats", "Hypothesis tests over a simulate CSV");
  stats_cmd->add_option("--config", config_path, "Flat key = value config file");
  stats_cmd->add_option("csv", stats.csv, "Trace CSV from simulate")->required();
  stats_cmd->add_option("--csv-b", stats.csv_b,
                        "Second CSV; two-sample tests then use independent run sets");
  stats_cmd->add_option("--alpha", stats.alpha, "Significance level");
  stats_cmd->add_option("--essential-loci", stats.essential, "Essential loci, e.g. 1,7");
  stats_cmd->add_option("--nonessential-loci", stats.nonessential, "Nonessential loci, e.g. 8");
  stats_cmd->add_option("--generation", stats.generation, "Generation (0 = final)");
  stats_cmd->add_option("--out", stats.out, "JSON path ('-' = stdout)");

  SchemaArgs schema;
  CLI::App* schema_cmd =
      app.add_subcommand("schema-effect", "Brute-force effect of a schema partition");
  schema_cmd->add_option("--config", config_path, "Flat key = value config file");
  schema_cmd->add_option("--n", schema.n, "String length (exhaustive, n <= 24)");
  schema_cmd->add_option("--function", schema.function, "parity or table-file")
      ->check(CLI::IsMember({"parity", "table-file"}));
  schema_cmd->add_option("--table", schema.table_path, "Fitness table file (2^n lines)");
  schema_cmd->add_option("--index-set", schema.index_set, "Partition indices, e.g. 1..7");
  schema_cmd->add_option("--eta", schema.eta, "Analytic classification error");
  schema_cmd->add_option("--out", schema.out, "JSON path ('-' = stdout)");

  try {
    app.parse(argc, argv);
    CLI::App* active = nullptr;
    for (CLI::App* sub : {simulate, learn_cmd, stats_cmd, schema_cmd})
      if (*sub) active = sub;
    if (active == nullptr) return kExitBadArguments;
    if (!config_path.empty()) apply_flat_config(*active, config_path);
    if (*simulate) return cmd_simulate(sim);
    if (*learn_cmd) return cmd_learn(learn);
    if (*stats_cmd) return cmd_stats(stats);
    return cmd_schema_effect(schema);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadArguments;
  } catch (const ugalearn::CapabilityError& e) {
    std::cerr << "capability exceeded: " << e.what() << "\n";
    return kExitCapability;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
