#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "lingate/common.hpp"

namespace lingate::metrics {

using TokenList = std::vector<std::string>;

/// Corpus BLEU against one reference per hypothesis, case-insensitive, no
/// smoothing: any order with zero matched n-grams gives 0.
inline double bleu(const std::vector<TokenList>& refs, const std::vector<TokenList>& hyps, int max_n = 4) {
  if (refs.size() != hyps.size()) throw Error("bleu: reference and hypothesis counts differ");
  if (max_n < 1) throw Error("bleu: max_n must be >= 1");
  std::vector<std::size_t> matched(static_cast<std::size_t>(max_n), 0);
  std::vector<std::size_t> total(static_cast<std::size_t>(max_n), 0);
  std::size_t ref_len = 0, hyp_len = 0;

  auto fold = [](const TokenList& t) {
    TokenList out;
    out.reserve(t.size());
    for (const auto& w : t) out.push_back(text::to_lower(w));
    return out;
  };
  auto ngram_counts = [](const TokenList& t, std::size_t n) {
    std::map<std::vector<std::string>, std::size_t> c;
    for (std::size_t i = 0; i + n <= t.size(); ++i) ++c[TokenList(t.begin() + i, t.begin() + i + n)];
    return c;
  };

  for (std::size_t s = 0; s < refs.size(); ++s) {
    const auto r = fold(refs[s]);
    const auto h = fold(hyps[s]);
    ref_len += r.size();
    hyp_len += h.size();
    for (int n = 1; n <= max_n; ++n) {
      const auto hc = ngram_counts(h, static_cast<std::size_t>(n));
      const auto rc = ngram_counts(r, static_cast<std::size_t>(n));
      for (const auto& [gram, count] : hc) {
        total[n - 1] += count;
        if (auto it = rc.find(gram); it != rc.end()) matched[n - 1] += std::min(count, it->second);
      }
    }
  }
  if (hyp_len == 0) return 0.0;
  double log_sum = 0.0;
  for (int n = 0; n < max_n; ++n) {
    if (matched[n] == 0) return 0.0;
    log_sum += std::log(static_cast<double>(matched[n]) / static_cast<double>(total[n]));
  }
  double bp = 1.0;
  if (hyp_len < ref_len) bp = std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(hyp_len));
  return 100.0 * bp * std::exp(log_sum / max_n);
}

}  // namespace lingate::metrics
