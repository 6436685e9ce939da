#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lingate/common.hpp"

namespace lingate {

/// Joins the words of an n-gram key. Tokens never contain whitespace, and
/// this separator never appears in case-folded input text.
inline constexpr std::string_view kNgramJoiner = "▸";

struct NgramRange {
  int min = 1;
  int max = 2;
  bool operator==(const NgramRange&) const = default;
};

/// Sparse n-gram counts. Entries keep first-occurrence order (n ascending,
/// then position) so that scoring sums in an order that depends only on the
/// shape of the utterance, never on the spelling of its words.
class FeatureVector {
 public:
  using Entry = std::pair<std::string, std::uint32_t>;

  void add(std::string key, std::uint32_t count = 1) {
    auto [it, inserted] = index_.try_emplace(key, entries_.size());
    if (inserted) {
      entries_.emplace_back(std::move(key), count);
    } else {
      entries_[it->second].second += count;
    }
  }

  std::uint32_t count(std::string_view key) const {
    auto it = index_.find(std::string(key));
    return it == index_.end() ? 0 : entries_[it->second].second;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::map<std::string, std::uint32_t> as_map() const {
    return {entries_.begin(), entries_.end()};
  }

  friend bool operator==(const FeatureVector& a, const FeatureVector& b) {
    return a.as_map() == b.as_map();
  }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Lowercase, then split on whitespace.
inline std::vector<std::string> tokenize(std::string_view text) {
  return text::split_ws(text::to_lower(text));
}

inline FeatureVector extract_features(std::string_view utterance, NgramRange range) {
  if (range.min < 1 || range.max < range.min)
    throw Error("invalid n-gram range " + std::to_string(range.min) + ".." +
                std::to_string(range.max));
  const auto tokens = tokenize(utterance);
  FeatureVector fv;
  for (int n = range.min; n <= range.max; ++n) {
    const auto width = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i + width <= tokens.size(); ++i) {
      std::string key = tokens[i];
      for (std::size_t k = 1; k < width; ++k) {
        key += kNgramJoiner;
        key += tokens[i + k];
      }
      fv.add(std::move(key));
    }
  }
  return fv;
}

}  // namespace lingate
