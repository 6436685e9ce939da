#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lingate/calibration/threshold.hpp"
#include "lingate/nlu/joint_label.hpp"

namespace lingate::router {

enum class PipelineMode { OnlineBridge, Native, OfflineBootstrapped };
enum class Stage { Asr, Mt, Nlu };
enum class Outcome { Automated, SourceAnalyst, TargetAnalyst };
enum class Pool { Source, Target };
enum class TaskState { Queued, Claimed, Labeled };

inline const char* to_string(PipelineMode m) {
  switch (m) {
    case PipelineMode::OnlineBridge: return "ONLINE_BRIDGE";
    case PipelineMode::Native: return "NATIVE";
    case PipelineMode::OfflineBootstrapped: return "OFFLINE_BOOTSTRAPPED";
  }
  return "?";
}
inline const char* to_string(Stage s) {
  switch (s) {
    case Stage::Asr: return "ASR";
    case Stage::Mt: return "MT";
    case Stage::Nlu: return "NLU";
  }
  return "?";
}
inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Automated: return "AUTOMATED";
    case Outcome::SourceAnalyst: return "SOURCE_ANALYST";
    case Outcome::TargetAnalyst: return "TARGET_ANALYST";
  }
  return "?";
}
inline const char* to_string(Pool p) { return p == Pool::Source ? "source" : "target"; }
inline const char* to_string(TaskState s) {
  switch (s) {
    case TaskState::Queued: return "QUEUED";
    case TaskState::Claimed: return "CLAIMED";
    case TaskState::Labeled: return "LABELED";
  }
  return "?";
}

template <class E>
E enum_from(std::string_view s, std::initializer_list<E> all) {
  for (E e : all)
    if (s == to_string(e)) return e;
  throw Error("unknown enum value '" + std::string(s) + "'");
}

// Case-insensitive.
inline PipelineMode parse_mode(std::string_view s) {
  std::string upper(s);
  for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return enum_from(std::string_view(upper), {PipelineMode::OnlineBridge, PipelineMode::Native, PipelineMode::OfflineBootstrapped});
}
inline Stage parse_stage(std::string_view s) { return enum_from(s, {Stage::Asr, Stage::Mt, Stage::Nlu}); }
inline Outcome parse_outcome(std::string_view s) {
  return enum_from(s, {Outcome::Automated, Outcome::SourceAnalyst, Outcome::TargetAnalyst});
}
inline Pool parse_pool(std::string_view s) { return enum_from(s, {Pool::Source, Pool::Target}); }
inline TaskState parse_task_state(std::string_view s) {
  return enum_from(s, {TaskState::Queued, TaskState::Claimed, TaskState::Labeled});
}

struct GateRecord {
  Stage stage = Stage::Asr;
  double confidence = 0.0;
  double threshold = 0.0;
  bool passed = false;
  bool operator==(const GateRecord&) const = default;
};

/// Terminal routing outcome of one utterance. Analyst outcomes start
/// unresolved and resolve when the label is submitted.
struct Disposition {
  std::string utterance_id;
  Outcome outcome = Outcome::Automated;
  std::optional<JointLabel> label;
  std::vector<GateRecord> trace;
  bool resolved = false;
  std::optional<std::uint64_t> task_id;
  std::string transcript;   // top ASR hypothesis
  std::string translation;  // classifier-side text after MT, if any
  bool operator==(const Disposition&) const = default;

  std::optional<GateRecord> failed_gate() const {
    for (const auto& g : trace)
      if (!g.passed) return g;
    return std::nullopt;
  }
};

struct AnalystTask {
  std::uint64_t id = 0;
  std::string utterance_id;
  Pool pool = Pool::Source;
  std::string payload;
  TaskState state = TaskState::Queued;
  std::optional<std::string> owner;
  std::optional<JointLabel> label;
  GateRecord failed_gate;
  std::int64_t created_ms = 0;
  std::optional<std::int64_t> claimed_ms;
  std::optional<std::int64_t> labeled_ms;
  bool operator==(const AnalystTask&) const = default;
};

// ---------------------------------------------------------------------------
// JSON forms shared by the event log and the service API.

inline nlohmann::json number_json(double v) {
  if (v == kInfinity) return "inf";
  return v;
}
inline double number_from(const nlohmann::json& j) {
  if (j.is_string()) return calibration::parse_double(j.get<std::string>());
  return j.get<double>();
}

inline nlohmann::json to_json(const JointLabel& l) { return {{"tn", l.tn}, {"sv", l.sv}, {"en", l.en}}; }
inline JointLabel label_from_json(const nlohmann::json& j) {
  return {j.at("tn").get<std::string>(), j.at("sv").get<std::string>(), j.at("en").get<std::string>()};
}

inline nlohmann::json to_json(const GateRecord& g) {
  return {{"stage", to_string(g.stage)},
          {"confidence", number_json(g.confidence)},
          {"threshold", number_json(g.threshold)},
          {"passed", g.passed}};
}
inline GateRecord gate_from_json(const nlohmann::json& j) {
  return {parse_stage(j.at("stage").get<std::string>()), number_from(j.at("confidence")),
          number_from(j.at("threshold")), j.at("passed").get<bool>()};
}

inline nlohmann::json to_json(const Disposition& d) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& g : d.trace) trace.push_back(to_json(g));
  nlohmann::json j = {{"utterance_id", d.utterance_id},
                      {"outcome", to_string(d.outcome)},
                      {"resolved", d.resolved},
                      {"trace", trace},
                      {"transcript", d.transcript},
                      {"translation", d.translation}};
  j["label"] = d.label ? to_json(*d.label) : nlohmann::json(nullptr);
  j["task_id"] = d.task_id ? nlohmann::json(*d.task_id) : nlohmann::json(nullptr);
  return j;
}
inline Disposition disposition_from_json(const nlohmann::json& j) {
  Disposition d;
  d.utterance_id = j.at("utterance_id").get<std::string>();
  d.outcome = parse_outcome(j.at("outcome").get<std::string>());
  d.resolved = j.at("resolved").get<bool>();
  for (const auto& g : j.at("trace")) d.trace.push_back(gate_from_json(g));
  d.transcript = j.at("transcript").get<std::string>();
  d.translation = j.at("translation").get<std::string>();
  if (!j.at("label").is_null()) d.label = label_from_json(j.at("label"));
  if (!j.at("task_id").is_null()) d.task_id = j.at("task_id").get<std::uint64_t>();
  return d;
}

inline nlohmann::json to_json(const AnalystTask& t) {
  auto opt = [](const auto& o) { return o ? nlohmann::json(*o) : nlohmann::json(nullptr); };
  return {{"task_id", t.id},
          {"utterance_id", t.utterance_id},
          {"pool", to_string(t.pool)},
          {"payload", t.payload},
          {"state", to_string(t.state)},
          {"owner", opt(t.owner)},
          {"label", t.label ? to_json(*t.label) : nlohmann::json(nullptr)},
          {"failed_gate", to_json(t.failed_gate)},
          {"created_ms", t.created_ms},
          {"claimed_ms", opt(t.claimed_ms)},
          {"labeled_ms", opt(t.labeled_ms)}};
}
inline AnalystTask task_from_json(const nlohmann::json& j) {
  AnalystTask t;
  t.id = j.at("task_id").get<std::uint64_t>();
  t.utterance_id = j.at("utterance_id").get<std::string>();
  t.pool = parse_pool(j.at("pool").get<std::string>());
  t.payload = j.at("payload").get<std::string>();
  t.state = parse_task_state(j.at("state").get<std::string>());
  if (!j.at("owner").is_null()) t.owner = j.at("owner").get<std::string>();
  if (!j.at("label").is_null()) t.label = label_from_json(j.at("label"));
  t.failed_gate = gate_from_json(j.at("failed_gate"));
  t.created_ms = j.at("created_ms").get<std::int64_t>();
  if (!j.at("claimed_ms").is_null()) t.claimed_ms = j.at("claimed_ms").get<std::int64_t>();
  if (!j.at("labeled_ms").is_null()) t.labeled_ms = j.at("labeled_ms").get<std::int64_t>();
  return t;
}

}  // namespace lingate::router
