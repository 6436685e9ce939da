#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "lingate/bridge/adapters.hpp"
#include "lingate/bridge/text_norm.hpp"
#include "lingate/calibration/threshold.hpp"
#include "lingate/nlu/classifier.hpp"
#include "lingate/router/types.hpp"

namespace lingate::router {

/// Everything one utterance passes through. In ONLINE_BRIDGE mode `mt`
/// translates from `source_language` (the caller's) into `target_language`
/// (the classifier's). The other modes classify the transcript directly.
struct Pipeline {
  PipelineMode mode = PipelineMode::OnlineBridge;
  calibration::ThresholdSet thresholds;
  std::shared_ptr<const bridge::AsrAdapter> asr;
  std::shared_ptr<const bridge::MtAdapter> mt;
  std::string source_language = "es";
  std::string target_language = "en";
  std::shared_ptr<const ClassifierModel> model;

  void validate() const {
    thresholds.validate();
    if (!asr) throw Error("pipeline has no ASR adapter");
    if (!model) throw Error("pipeline has no intent model");
    if (mode == PipelineMode::OnlineBridge && !mt) throw Error("online bridge mode needs an MT adapter");
  }
};

struct GateEvaluation {
  std::vector<GateRecord> trace;
  std::optional<Stage> failed;
  std::string transcript;
  std::string translation;
  std::optional<Prediction> prediction;
  Outcome outcome = Outcome::Automated;
  std::string payload;  // what the analyst sees when escalated
};

namespace detail {

// Wraps adapters that declare a serial contract.
class SerialAsr final : public bridge::AsrAdapter {
 public:
  explicit SerialAsr(std::shared_ptr<const bridge::AsrAdapter> inner) : inner_(std::move(inner)) {}
  bridge::AsrResult recognize(std::string_view input) const override {
    std::lock_guard lock(mu_);
    return inner_->recognize(input);
  }
  std::string describe() const override { return inner_->describe(); }

 private:
  std::shared_ptr<const bridge::AsrAdapter> inner_;
  mutable std::mutex mu_;
};

class SerialMt final : public bridge::MtAdapter {
 public:
  explicit SerialMt(std::shared_ptr<const bridge::MtAdapter> inner) : inner_(std::move(inner)) {}
  bridge::MtResult translate(std::string_view t, std::string_view s, std::string_view g) const override {
    std::lock_guard lock(mu_);
    return inner_->translate(t, s, g);
  }
  std::string describe() const override { return inner_->describe(); }

 private:
  std::shared_ptr<const bridge::MtAdapter> inner_;
  mutable std::mutex mu_;
};

}  // namespace detail

inline Pipeline with_serialized_adapters(Pipeline p) {
  if (p.asr && !p.asr->concurrent_safe()) p.asr = std::make_shared<detail::SerialAsr>(p.asr);
  if (p.mt && !p.mt->concurrent_safe()) p.mt = std::make_shared<detail::SerialMt>(p.mt);
  return p;
}

/// Runs the mode's gate sequence and stops at the first gate whose confidence
/// falls strictly below its threshold. Adapter failures count as confidence 0.
inline GateEvaluation evaluate_gates(const Pipeline& p, std::string_view input) {
  GateEvaluation ev;
  auto gate = [&](Stage stage, double confidence, double threshold) {
    const bool passed = !(confidence < threshold);
    ev.trace.push_back({stage, confidence, threshold, passed});
    if (!passed) ev.failed = stage;
    return passed;
  };
  auto escalate_source = [&] {
    ev.outcome = Outcome::SourceAnalyst;
    ev.payload = ev.transcript.empty() ? std::string(input) : ev.transcript;
    return ev;
  };

  double asr_conf = 0.0;
  try {
    auto asr = p.asr->recognize(input);
    ev.transcript = asr.top();
    asr_conf = asr.no_hypothesis ? 0.0 : asr.confidence;
  } catch (const std::exception&) {
    asr_conf = 0.0;
  }
  if (!gate(Stage::Asr, asr_conf, p.thresholds.tau_asr)) return escalate_source();

  std::string classifier_text = ev.transcript;
  if (p.mode == PipelineMode::OnlineBridge) {
    double mt_conf = 0.0;
    try {
      auto mt = p.mt->translate(bridge::normalize_for_mt(ev.transcript), p.source_language, p.target_language);
      ev.translation = std::move(mt.translation);
      mt_conf = mt.confidence;
    } catch (const std::exception&) {
      mt_conf = 0.0;
    }
    if (!gate(Stage::Mt, mt_conf, p.thresholds.tau_mt)) return escalate_source();
    classifier_text = bridge::denormalize_from_mt(ev.translation);
  }

  ev.prediction = p.model->predict_text(classifier_text);
  if (!gate(Stage::Nlu, ev.prediction->confidence, p.thresholds.tau_nlu)) {
    if (p.mode == PipelineMode::OnlineBridge) {
      ev.outcome = Outcome::TargetAnalyst;
      ev.payload = ev.translation;
      return ev;
    }
    return escalate_source();
  }
  ev.outcome = Outcome::Automated;
  return ev;
}

}  // namespace lingate::router
