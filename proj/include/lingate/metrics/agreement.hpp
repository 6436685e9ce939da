#pragma once

#include <span>
#include <vector>

#include "lingate/common.hpp"
#include "lingate/corpus.hpp"

namespace lingate::metrics {

/// 2x2 contingency of per-item correctness for two models. "plus" means the
/// model was correct: plus_minus counts items model A got right and B wrong.
struct AgreementTable {
  std::size_t plus_plus = 0;
  std::size_t plus_minus = 0;
  std::size_t minus_plus = 0;
  std::size_t minus_minus = 0;

  std::size_t total() const { return plus_plus + plus_minus + minus_plus + minus_minus; }
  double percent(std::size_t cell) const {
    return total() ? 100.0 * static_cast<double>(cell) / static_cast<double>(total()) : 0.0;
  }
};

template <class Label>
AgreementTable agreement_table(std::span<const Label> preds_a, std::span<const Label> preds_b,
                               std::span<const Label> gold) {
  if (preds_a.size() != gold.size() || preds_b.size() != gold.size())
    throw Error("agreement table: prediction and gold lengths differ");
  AgreementTable t;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool a = preds_a[i] == gold[i];
    const bool b = preds_b[i] == gold[i];
    if (a && b) ++t.plus_plus;
    else if (a) ++t.plus_minus;
    else if (b) ++t.minus_plus;
    else ++t.minus_minus;
  }
  return t;
}

template <class Label>
AgreementTable agreement_table(const std::vector<Label>& a, const std::vector<Label>& b,
                               const std::vector<Label>& gold) {
  return agreement_table<Label>(std::span<const Label>(a), std::span<const Label>(b),
                                std::span<const Label>(gold));
}

struct CorpusStats {
  std::size_t utterances = 0;
  std::size_t words = 0;
  std::size_t unique_labels = 0;
  bool operator==(const CorpusStats&) const = default;
};

// Words are counted on the transcript (`text`) field.
inline CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats s;
  std::set<JointLabel> labels;
  for (const auto& ex : corpus) {
    ++s.utterances;
    s.words += text::split_ws(ex.text).size();
    labels.insert(ex.label);
  }
  s.unique_labels = labels.size();
  return s;
}

}  // namespace lingate::metrics
