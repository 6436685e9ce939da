#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lingate {

// Base error for every failure the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

__extension__ using uint128 = unsigned __int128;

// ---------------------------------------------------------------------------
// Hashing and seeded randomness. Every random draw in the library goes through
// these so results are reproducible across standard library implementations.

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ splitmix64(b));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). n must be > 0.
  std::size_t below(std::size_t n) {
    const auto wide = static_cast<uint128>(engine_()) * n;
    return static_cast<std::size_t>(wide >> 64);
  }

  bool bernoulli(double p) { return uniform() < p; }

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

  template <class T>
  const T& pick(const std::vector<T>& items) {
    return items[below(items.size())];
  }

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Text helpers. Case folding covers ASCII plus the Latin-1 supplement block,
// which is enough for English and Spanish.

namespace text {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto c = static_cast<unsigned char>(out[i]);
    if (c >= 'A' && c <= 'Z') {
      out[i] = static_cast<char>(c + 32);
    } else if (c == 0xC3 && i + 1 < out.size()) {
      auto n = static_cast<unsigned char>(out[i + 1]);
      if (n >= 0x80 && n <= 0x9E && n != 0x97) out[i + 1] = static_cast<char>(n + 0x20);
      ++i;
    }
  }
  return out;
}

// Uppercases the first letter at byte offset `pos` in place, if it is one.
inline void capitalize_at(std::string& s, std::size_t pos) {
  auto c = static_cast<unsigned char>(s[pos]);
  if (c >= 'a' && c <= 'z') {
    s[pos] = static_cast<char>(c - 32);
  } else if (c == 0xC3 && pos + 1 < s.size()) {
    auto n = static_cast<unsigned char>(s[pos + 1]);
    if (n >= 0xA0 && n <= 0xBE && n != 0xB7) s[pos + 1] = static_cast<char>(n - 0x20);
  }
}

inline bool is_alpha_at(std::string_view s, std::size_t pos) {
  auto c = static_cast<unsigned char>(s[pos]);
  if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return true;
  if (c == 0xC3 && pos + 1 < s.size()) {
    auto n = static_cast<unsigned char>(s[pos + 1]);
    return n >= 0x80 && n <= 0xBF && n != 0x97 && n != 0xB7;
  }
  return false;
}

// Byte length of a punctuation character starting at `pos`, or 0.
inline std::size_t punct_len(std::string_view s, std::size_t pos) {
  auto c = static_cast<unsigned char>(s[pos]);
  if (c < 0x80) {
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
                   (c >= 0x7B && c <= 0x7E)
               ? 1
               : 0;
  }
  // ¡ ¿ « » and the general punctuation dashes/quotes.
  if (c == 0xC2 && pos + 1 < s.size()) {
    auto n = static_cast<unsigned char>(s[pos + 1]);
    return (n == 0xA1 || n == 0xBF || n == 0xAB || n == 0xBB) ? 2 : 0;
  }
  if (c == 0xE2 && pos + 2 < s.size() && static_cast<unsigned char>(s[pos + 1]) == 0x80) {
    auto n = static_cast<unsigned char>(s[pos + 2]);
    return (n >= 0x90 && n <= 0xA6) ? 3 : 0;
  }
  return 0;
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string join(const std::vector<std::string>& tokens, std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace text

}  // namespace lingate
