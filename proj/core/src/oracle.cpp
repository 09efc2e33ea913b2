#include "ugalearn/oracle.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace ugalearn {

namespace {

std::map<std::string, BoolFunction>& function_table() {
  static std::map<std::string, BoolFunction> table = {
      {"parity", [](const BitString& y) { return parity(y); }},
  };
  return table;
}

std::mutex& function_table_mutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

void register_bool_function(const std::string& name, BoolFunction fn) {
  std::lock_guard lock(function_table_mutex());
  function_table()[name] = std::move(fn);
}

const BoolFunction& find_bool_function(const std::string& name) {
  std::lock_guard lock(function_table_mutex());
  const auto it = function_table().find(name);
  if (it == function_table().end())
    throw std::invalid_argument("unknown boolean function: " + name);
  return it->second;
}

void OracleSpec::validate() const {
  if (n == 0 || k == 0) throw std::invalid_argument("OracleSpec: n and k must be positive");
  if (k >= n) throw std::invalid_argument("OracleSpec: requires k < n");
  if (essential.size() != k) throw std::invalid_argument("OracleSpec: |K| must equal k");
  std::uint32_t prev = 0;
  for (const std::uint32_t i : essential) {
    if (i <= prev || i > n)
      throw std::invalid_argument("OracleSpec: K must be strictly increasing within [1, n]");
    prev = i;
  }
  if (eta.num == 0 || 2 * eta.num >= eta.den)
    throw std::invalid_argument("OracleSpec: eta must satisfy 0 < eta < 1/2");
  find_bool_function(function);
}

std::string OracleSpec::to_config() const {
  std::ostringstream out;
  out << "n = " << n << "\n";
  out << "k = " << k << "\n";
  out << "K = ";
  for (std::size_t i = 0; i < essential.size(); ++i) {
    if (i) out << ",";
    out << essential[i];
  }
  out << "\n";
  out << "f = " << function << "\n";
  out << "eta_num = " << eta.num << "\n";
  out << "eta_den = " << eta.den << "\n";
  return out.str();
}

OracleSpec OracleSpec::from_config(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) continue;
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
      return std::string(s);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  auto need = [&](const char* key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument(std::string("OracleSpec: missing key ") + key);
    return it->second;
  };
  OracleSpec spec;
  spec.n = static_cast<std::uint32_t>(std::stoul(need("n")));
  spec.k = static_cast<std::uint32_t>(std::stoul(need("k")));
  spec.function = need("f");
  spec.eta = Rational(std::stoull(need("eta_num")), std::stoull(need("eta_den")));
  std::stringstream ks(need("K"));
  std::string tok;
  while (std::getline(ks, tok, ','))
    if (!tok.empty()) spec.essential.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
  spec.validate();
  return spec;
}

BitString project(const BitString& x, std::span<const std::uint32_t> K) {
  BitString out(static_cast<std::uint32_t>(K.size()));
  for (std::size_t i = 0; i < K.size(); ++i) {
    if (K[i] < 1 || K[i] > x.size())
      throw std::invalid_argument("project: index outside [1, n]");
    out.set(static_cast<std::uint32_t>(i), x.get(K[i] - 1));
  }
  return out;
}

bool parity(const BitString& y) {
  if (y.size() == 0) throw std::invalid_argument("parity: empty input");
  return y.count_ones() & 1u;
}

TargetConcept target_concept(const OracleSpec& spec) {
  TargetConcept c(spec.n);
  for (const std::uint32_t i : spec.essential) c.set(i - 1, true);
  return c;
}

bool query(const OracleSpec& spec, const BitString& x, RandomStream& rng, QueryCounter& counter) {
  if (x.size() != spec.n) throw std::invalid_argument("query: chromosome length != n");
  const bool truth = find_bool_function(spec.function)(project(x, spec.essential));
  ++counter.count;
  return bernoulli(rng.next(), spec.eta) ? !truth : truth;
}

NoisyOracle::NoisyOracle(OracleSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  masks_.assign((spec_.n + 63) / 64, 0);
  for (const std::uint32_t i : spec_.essential)
    masks_[(i - 1) >> 6] |= std::uint64_t{1} << ((i - 1) & 63);
  parity_path_ = spec_.function == "parity";
  if (!parity_path_) fn_ = &find_bool_function(spec_.function);
}

bool NoisyOracle::noiseless_row(std::span<const std::uint64_t> row_words) const {
  if (parity_path_) {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < masks_.size(); ++w) acc ^= row_words[w] & masks_[w];
    return std::popcount(acc) & 1;
  }
  BitString x(spec_.n);
  for (std::size_t w = 0; w < row_words.size(); ++w) x.words()[w] = row_words[w];
  return (*fn_)(project(x, spec_.essential));
}

bool NoisyOracle::noiseless(const BitString& x) const {
  if (x.size() != spec_.n) throw std::invalid_argument("NoisyOracle: chromosome length != n");
  return noiseless_row(x.words());
}

bool NoisyOracle::query_with_noise(std::span<const std::uint64_t> row_words,
                                   std::uint64_t noise_word, QueryCounter& counter) const {
  const bool truth = noiseless_row(row_words);
  ++counter.count;
  return bernoulli(noise_word, spec_.eta) ? !truth : truth;
}

}  // namespace ugalearn
