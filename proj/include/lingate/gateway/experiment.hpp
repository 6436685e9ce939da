#pragma once

#include <string>
#include <vector>

#include "lingate/bridge/adapters.hpp"
#include "lingate/bridge/text_norm.hpp"
#include "lingate/metrics/rejection.hpp"
#include "lingate/metrics/ter.hpp"
#include "lingate/nlu/classifier.hpp"

// Batch evaluation of intent models, as in the error-rejection experiments.
namespace lingate::experiment {

enum class Condition { Asr, Human };

inline const char* to_string(Condition c) { return c == Condition::Asr ? "ASR" : "human"; }

// ASR condition: top recognizer hypothesis. Human: the transcript.
inline std::string condition_text(const LabeledExample& ex, Condition c) {
  if (c == Condition::Human) return ex.text;
  return ex.n_best.empty() ? std::string{} : ex.n_best.front();
}

struct Outcomes {
  std::vector<metrics::ScoredOutcome> scored;
  std::vector<JointLabel> predictions;
  std::vector<JointLabel> gold;

  double error_rate() const {
    std::size_t wrong = 0;
    for (const auto& s : scored) wrong += s.correct ? 0 : 1;
    return scored.empty() ? 0.0 : static_cast<double>(wrong) / static_cast<double>(scored.size());
  }
};

inline void record(Outcomes& out, const Prediction& p, const JointLabel& gold) {
  out.scored.push_back({p.confidence, p.best == gold});
  out.predictions.push_back(p.best);
  out.gold.push_back(gold);
}

/// Classifies the condition text directly (native or offline-bootstrapped models).
inline Outcomes evaluate_direct(const ClassifierModel& model, const Corpus& test, Condition c) {
  Outcomes out;
  for (const auto& ex : test) record(out, model.predict_text(condition_text(ex, c)), ex.label);
  return out;
}

/// Online bridge: punctuate and truecase, translate, strip and lowercase,
/// then classify with the other language's model.
inline std::string bridge_text(const bridge::MtAdapter& mt, std::string_view utterance, std::string_view src,
                               std::string_view tgt) {
  try {
    return bridge::denormalize_from_mt(mt.translate(bridge::normalize_for_mt(utterance), src, tgt).translation);
  } catch (const bridge::AdapterError&) {
    return {};
  }
}

inline Outcomes evaluate_bridged(const ClassifierModel& model, const bridge::MtAdapter& mt, std::string_view src,
                                 std::string_view tgt, const Corpus& test, Condition c) {
  Outcomes out;
  for (const auto& ex : test)
    record(out, model.predict_text(bridge_text(mt, condition_text(ex, c), src, tgt)), ex.label);
  return out;
}

inline const std::vector<double>& table_fractions() {
  static const std::vector<double> f{0.0, 0.1, 0.2};
  return f;
}

inline metrics::ErrorRejectionCurve curve(const Outcomes& o, const std::vector<double>& fractions = table_fractions()) {
  return metrics::error_rejection_curve(o.scored, fractions);
}

/// Translation quality of the test set's condition text against references
/// matched by position.
inline metrics::MtQualityReport translation_quality(const bridge::MtAdapter& mt, std::string_view src,
                                                    std::string_view tgt, const Corpus& test,
                                                    const Corpus& references, Condition c) {
  if (test.size() != references.size()) throw Error("test and reference sets differ in size");
  std::vector<metrics::TokenList> refs, hyps;
  for (std::size_t i = 0; i < test.size(); ++i) {
    if (test[i].id != references[i].id) throw Error("reference ids do not line up with test ids at " + test[i].id);
    refs.push_back(text::split_ws(bridge::denormalize_from_mt(references[i].text)));
    hyps.push_back(text::split_ws(bridge_text(mt, condition_text(test[i], c), src, tgt)));
  }
  return metrics::mt_quality(refs, hyps);
}

}  // namespace lingate::experiment
