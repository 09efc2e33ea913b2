#include "ugalearn/population.hpp"

#include <bit>
#include <stdexcept>

namespace ugalearn {

BitString BitString::from_string(std::string_view text) {
  BitString out(static_cast<std::uint32_t>(text.size()));
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1')
      out.set(static_cast<std::uint32_t>(i), true);
    else if (text[i] != '0')
      throw std::invalid_argument("BitString: expected '0' or '1'");
  }
  return out;
}

std::uint32_t BitString::count_ones() const {
  std::uint32_t total = 0;
  for (const std::uint64_t w : words_) total += static_cast<std::uint32_t>(std::popcount(w));
  return total;
}

std::string BitString::str() const {
  std::string out(n_, '0');
  for (std::uint32_t i = 0; i < n_; ++i)
    if (get(i)) out[i] = '1';
  return out;
}

Population::Population(std::uint32_t m, std::uint32_t n)
    : m_(m), n_(n), words_per_row_((n + 63) / 64) {
  if (m == 0 || n == 0) throw std::invalid_argument("Population: m and n must be positive");
  data_.assign(static_cast<std::size_t>(m_) * words_per_row_, 0);
}

BitString Population::row(std::uint32_t r) const {
  BitString out(n_);
  const auto src = row_words(r);
  for (std::uint32_t w = 0; w < words_per_row_; ++w) out.words()[w] = src[w];
  return out;
}

void Population::set_row(std::uint32_t r, const BitString& bits) {
  if (bits.size() != n_) throw std::invalid_argument("Population: row length mismatch");
  auto dst = row_words(r);
  for (std::uint32_t w = 0; w < words_per_row_; ++w) dst[w] = bits.words()[w];
}

std::uint64_t Population::tail_mask() const {
  const std::uint32_t rem = n_ & 63;
  return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
}

std::string Population::to_text() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(m_) * (n_ + 1));
  for (std::uint32_t r = 0; r < m_; ++r) {
    for (std::uint32_t i = 0; i < n_; ++i) out.push_back(bit(r, i) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

Population Population::from_text(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    if (end > start) lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  if (lines.empty()) throw std::invalid_argument("Population: empty text");
  Population pop(static_cast<std::uint32_t>(lines.size()),
                 static_cast<std::uint32_t>(lines[0].size()));
  for (std::size_t r = 0; r < lines.size(); ++r) {
    if (lines[r].size() != lines[0].size())
      throw std::invalid_argument("Population: ragged rows");
    pop.set_row(static_cast<std::uint32_t>(r), BitString::from_string(lines[r]));
  }
  return pop;
}

LocusFrequency one_frequency(const Population& pop, std::uint32_t locus) {
  if (locus < 1 || locus > pop.length())
    throw std::out_of_range("one_frequency: locus outside [1, n]");
  const std::uint32_t i = locus - 1;
  const std::uint32_t word = i >> 6;
  const std::uint64_t bit = std::uint64_t{1} << (i & 63);
  std::uint32_t ones = 0;
  for (std::uint32_t r = 0; r < pop.rows(); ++r)
    if (pop.row_words(r)[word] & bit) ++ones;
  return {ones, pop.rows()};
}

Population random_population(std::uint32_t m, std::uint32_t n, const CounterRng& rng) {
  return random_population_keyed(m, n, rng, {});
}

Population random_population_keyed(std::uint32_t m, std::uint32_t n, const CounterRng& rng,
                                   std::span<const std::uint32_t> locus_keys) {
  if (m == 0 || n == 0)
    throw std::invalid_argument("random_population: m and n must be positive");
  if (!locus_keys.empty() && locus_keys.size() != n)
    throw std::invalid_argument("random_population: locus_keys size mismatch");
  Population pop(m, n);
  const auto stream = rng.stream(0, Phase::init);
  const std::uint32_t wpr = pop.words_per_row();
  if (locus_keys.empty()) {
    const std::uint64_t tail = pop.tail_mask();
    for (std::uint32_t r = 0; r < m; ++r) {
      auto row = pop.row_words(r);
      for (std::uint32_t w = 0; w < wpr; ++w) row[w] = stream.draw(r, w);
      row[wpr - 1] &= tail;
    }
  } else {
    for (std::uint32_t r = 0; r < m; ++r) {
      auto row = pop.row_words(r);
      for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint32_t key = locus_keys[i] - 1;
        if ((stream.draw(r, key >> 6) >> (key & 63)) & 1u)
          row[i >> 6] |= std::uint64_t{1} << (i & 63);
      }
    }
  }
  return pop;
}

}  // namespace ugalearn
