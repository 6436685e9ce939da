#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "lingate/common.hpp"

namespace lingate::metrics {

struct WerBreakdown {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t reference_token_count = 0;
  double wer = 0.0;
  bool empty_reference = false;  // wer is then insertions / 1

  std::size_t edits() const { return substitutions + deletions + insertions; }
  double substitution_share() const { return share(substitutions); }
  double deletion_share() const { return share(deletions); }
  double insertion_share() const { return share(insertions); }

 private:
  double share(std::size_t n) const {
    return edits() ? static_cast<double>(n) / static_cast<double>(edits()) : 0.0;
  }
};

/// Minimum unit-cost edit alignment. Among alignments of equal total cost the
/// breakdown prefers fewer substitutions, then fewer deletions. The DP keys
/// each cell on (total, subs, dels) lexicographically; that order is
/// preserved under addition, so the cellwise minimum is the global one.
template <class Token>
WerBreakdown wer(std::span<const Token> ref, std::span<const Token> hyp) {
  using Cost = std::tuple<std::size_t, std::size_t, std::size_t>;  // total, subs, dels
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<Cost> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = {j, 0, 0};
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = {i, 0, i};
    for (std::size_t j = 1; j <= m; ++j) {
      auto [dt, ds, dd] = prev[j];
      Cost del{dt + 1, ds, dd + 1};
      auto [it, is, id] = cur[j - 1];
      Cost ins{it + 1, is, id};
      auto [st, ss, sd] = prev[j - 1];
      const bool same = ref[i - 1] == hyp[j - 1];
      Cost diag{st + (same ? 0 : 1), ss + (same ? 0 : 1), sd};
      cur[j] = std::min({diag, del, ins});
    }
    std::swap(prev, cur);
  }
  auto [total, subs, dels] = prev[m];
  WerBreakdown b;
  b.substitutions = subs;
  b.deletions = dels;
  b.insertions = total - subs - dels;
  b.reference_token_count = n;
  if (n > 0) {
    b.wer = static_cast<double>(total) / static_cast<double>(n);
  } else {
    b.empty_reference = m > 0;
    b.wer = static_cast<double>(b.insertions);
  }
  return b;
}

inline WerBreakdown wer(const std::vector<std::string>& ref, const std::vector<std::string>& hyp) {
  return wer<std::string>(std::span<const std::string>(ref), std::span<const std::string>(hyp));
}

/// Plain Levenshtein distance; used by TER.
template <class Token>
std::size_t edit_distance(std::span<const Token> a, std::span<const Token> b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

/// Corpus-level accumulation: WER is total edits over total reference tokens.
class WerAccumulator {
 public:
  void add(const WerBreakdown& b) {
    total_.substitutions += b.substitutions;
    total_.deletions += b.deletions;
    total_.insertions += b.insertions;
    total_.reference_token_count += b.reference_token_count;
    ++utterances_;
    if (b.edits() > 0) ++utterances_with_errors_;
  }

  WerBreakdown total() const {
    WerBreakdown b = total_;
    b.wer = b.reference_token_count
                ? static_cast<double>(b.edits()) / static_cast<double>(b.reference_token_count)
                : static_cast<double>(b.insertions);
    b.empty_reference = b.reference_token_count == 0 && b.insertions > 0;
    return b;
  }

  double utterance_error_rate() const {
    return utterances_ ? static_cast<double>(utterances_with_errors_) / static_cast<double>(utterances_)
                       : 0.0;
  }

 private:
  WerBreakdown total_;
  std::size_t utterances_ = 0;
  std::size_t utterances_with_errors_ = 0;
};

/// Fraction of (reference, hypothesis) pairs with at least one edit after
/// case folding and whitespace tokenization.
inline double utterance_error_rate(std::span<const std::pair<std::string, std::string>> pairs) {
  if (pairs.empty()) throw Error("utterance error rate of an empty list");
  std::size_t bad = 0;
  for (const auto& [ref, hyp] : pairs) {
    if (wer(text::split_ws(text::to_lower(ref)), text::split_ws(text::to_lower(hyp))).edits() > 0) ++bad;
  }
  return static_cast<double>(bad) / static_cast<double>(pairs.size());
}

}  // namespace lingate::metrics
