#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ugalearn {

/// Exact non-negative rational, kept reduced. Probability-like parameters
/// (classification error eta, mutation rate, boosting epsilon) are stored this
/// way so threshold comparisons never depend on float rounding.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  constexpr Rational() = default;
  constexpr Rational(std::uint64_t n, std::uint64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    reduce();
  }

  constexpr void reduce() {
    const std::uint64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  constexpr double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  constexpr bool operator==(const Rational& o) const { return num == o.num && den == o.den; }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  /// Accepts "a/b", a plain integer, or a decimal like "0.004" (parsed exactly
  /// as digits over a power of ten, then reduced).
  static Rational parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("Rational: empty string");
    const auto slash = text.find('/');
    if (slash != std::string_view::npos) {
      return Rational(parse_u64(text.substr(0, slash)), parse_u64(text.substr(slash + 1)));
    }
    const auto dot = text.find('.');
    if (dot == std::string_view::npos) {
      return Rational(parse_u64(text), 1);
    }
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 18) throw std::invalid_argument("Rational: too many decimal digits");
    std::uint64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::uint64_t w = whole.empty() ? 0 : parse_u64(whole);
    const std::uint64_t f = frac.empty() ? 0 : parse_u64(frac);
    return Rational(w * den + f, den);
  }

 private:
  static std::uint64_t parse_u64(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("Rational: missing digits");
    std::uint64_t v = 0;
    for (const char c : s) {
      if (c < '0' || c > '9') throw std::invalid_argument("Rational: bad digit");
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
  }
};

}  // namespace ugalearn
