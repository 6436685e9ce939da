#pragma once

#include <set>
#include <string>

#include "lingate/corpus.hpp"

namespace lingate::calibration {

struct IntersectResult {
  Corpus a;
  Corpus b;
  LabelCatalog shared;
  double discard_fraction_a = 0.0;
  double discard_fraction_b = 0.0;
};

/// Keeps only examples whose joint label occurs in both corpora.
inline IntersectResult intersect_label_sets(const Corpus& a, const Corpus& b) {
  std::set<JointLabel> la, lb;
  for (const auto& ex : a) la.insert(ex.label);
  for (const auto& ex : b) lb.insert(ex.label);
  std::vector<JointLabel> common;
  std::set_intersection(la.begin(), la.end(), lb.begin(), lb.end(), std::back_inserter(common));
  if (common.empty()) throw Error("disjoint label sets");
  const std::set<JointLabel> keep(common.begin(), common.end());

  IntersectResult r;
  r.shared = LabelCatalog::from_labels(common, "<intersection>");
  auto filter = [&](const Corpus& in, Corpus& out) {
    for (const auto& ex : in)
      if (keep.count(ex.label)) out.push_back(ex);
    return in.empty() ? 0.0 : static_cast<double>(in.size() - out.size()) / static_cast<double>(in.size());
  };
  r.discard_fraction_a = filter(a, r.a);
  r.discard_fraction_b = filter(b, r.b);
  return r;
}

struct ExpandResult {
  Corpus examples;
  std::size_t skipped = 0;  // examples that carried no hypothesis at all
};

/// Turns every n-best hypothesis into its own training example with the
/// parent's label. Examples without an n-best list contribute their text
/// unchanged. Hypothesis k > 0 gets id suffix "#k".
inline ExpandResult expand_nbest(const Corpus& corpus) {
  ExpandResult r;
  for (const auto& ex : corpus) {
    if (ex.n_best.empty()) {
      if (ex.text.empty()) {
        ++r.skipped;
        continue;
      }
      r.examples.push_back(ex);
      continue;
    }
    for (std::size_t k = 0; k < ex.n_best.size(); ++k) {
      LabeledExample out;
      out.id = k == 0 ? ex.id : ex.id + "#" + std::to_string(k);
      out.language = ex.language;
      out.text = ex.n_best[k];
      out.label = ex.label;
      r.examples.push_back(std::move(out));
    }
  }
  return r;
}

}  // namespace lingate::calibration
