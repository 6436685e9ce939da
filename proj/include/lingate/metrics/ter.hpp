#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

#include "lingate/common.hpp"
#include "lingate/metrics/bleu.hpp"
#include "lingate/metrics/wer.hpp"

namespace lingate::metrics {

struct TerResult {
  std::size_t shifts = 0;
  std::size_t edits = 0;  // shifts + insertions + deletions + substitutions
  std::size_t reference_length = 0;
  bool empty_reference = false;
  double ter = 0.0;  // percent
};

inline constexpr std::size_t kMaxShiftBlock = 10;

/// Translation edit rate with greedy block shifts. Each round tries every
/// move of a hypothesis block that also occurs verbatim in the reference and
/// keeps the single move that lowers the remaining edit distance the most;
/// rounds stop when no move helps. Each applied shift costs one edit.
template <class Token>
TerResult ter(std::span<const Token> ref, std::span<const Token> hyp) {
  std::vector<Token> cur(hyp.begin(), hyp.end());
  std::set<std::vector<Token>> ref_blocks;
  for (std::size_t i = 0; i < ref.size(); ++i)
    for (std::size_t len = 1; len <= kMaxShiftBlock && i + len <= ref.size(); ++len)
      ref_blocks.emplace(ref.begin() + i, ref.begin() + i + len);

  TerResult r;
  std::size_t dist = edit_distance<Token>(std::span<const Token>(cur), ref);
  std::vector<Token> cand;
  while (dist > 0) {
    std::size_t best_dist = dist;
    std::vector<Token> best;
    const std::size_t n = cur.size();
    for (std::size_t start = 0; start < n; ++start) {
      for (std::size_t len = 1; len <= kMaxShiftBlock && start + len <= n; ++len) {
        std::vector<Token> block(cur.begin() + start, cur.begin() + start + len);
        if (!ref_blocks.count(block)) break;  // longer blocks extend this one
        std::vector<Token> rest(cur.begin(), cur.begin() + start);
        rest.insert(rest.end(), cur.begin() + start + len, cur.end());
        for (std::size_t dest = 0; dest <= rest.size(); ++dest) {
          if (dest == start) continue;
          cand.assign(rest.begin(), rest.begin() + dest);
          cand.insert(cand.end(), block.begin(), block.end());
          cand.insert(cand.end(), rest.begin() + dest, rest.end());
          const std::size_t d = edit_distance<Token>(std::span<const Token>(cand), ref);
          if (d < best_dist) {
            best_dist = d;
            best = cand;
          }
        }
      }
    }
    if (best_dist >= dist) break;
    cur = std::move(best);
    dist = best_dist;
    ++r.shifts;
  }
  r.edits = r.shifts + dist;
  r.reference_length = ref.size();
  if (ref.empty()) {
    r.empty_reference = !hyp.empty();
    r.ter = 100.0 * static_cast<double>(r.edits);
  } else {
    r.ter = 100.0 * static_cast<double>(r.edits) / static_cast<double>(ref.size());
  }
  return r;
}

inline TerResult ter(const std::vector<std::string>& ref, const std::vector<std::string>& hyp) {
  return ter<std::string>(std::span<const std::string>(ref), std::span<const std::string>(hyp));
}

struct MtQualityReport {
  double bleu = 0.0;
  double ter = 0.0;           // corpus edits / corpus reference length, percent
  double length_ratio = 0.0;  // hypothesis tokens / reference tokens * 100
  std::size_t segments = 0;
};

inline MtQualityReport mt_quality(const std::vector<TokenList>& refs, const std::vector<TokenList>& hyps) {
  if (refs.size() != hyps.size()) throw Error("mt_quality: reference and hypothesis counts differ");
  MtQualityReport q;
  q.segments = refs.size();
  q.bleu = bleu(refs, hyps);
  std::size_t edits = 0, ref_len = 0, hyp_len = 0;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    TokenList r, h;
    for (const auto& w : refs[i]) r.push_back(text::to_lower(w));
    for (const auto& w : hyps[i]) h.push_back(text::to_lower(w));
    edits += ter(r, h).edits;
    ref_len += r.size();
    hyp_len += h.size();
  }
  if (ref_len > 0) {
    q.ter = 100.0 * static_cast<double>(edits) / static_cast<double>(ref_len);
    q.length_ratio = 100.0 * static_cast<double>(hyp_len) / static_cast<double>(ref_len);
  }
  return q;
}

}  // namespace lingate::metrics
