#pragma once

#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lingate/router/types.hpp"

namespace lingate::router {

enum class EventType { Routed, Claimed, Expired, Labeled };

inline const char* to_string(EventType t) {
  switch (t) {
    case EventType::Routed: return "routed";
    case EventType::Claimed: return "claimed";
    case EventType::Expired: return "expired";
    case EventType::Labeled: return "labeled";
  }
  return "?";
}

struct Event {
  std::uint64_t seq = 0;
  EventType type = EventType::Routed;
  std::int64_t ts_ms = 0;
  std::string utterance_id;
  std::uint64_t task_id = 0;
  std::string analyst;
  std::optional<Disposition> disposition;  // routed
  std::optional<AnalystTask> task;         // routed, when escalated
  std::optional<JointLabel> label;         // labeled
};

inline nlohmann::json to_json(const Event& e) {
  nlohmann::json j = {{"seq", e.seq}, {"type", to_string(e.type)}, {"ts_ms", e.ts_ms}};
  switch (e.type) {
    case EventType::Routed:
      j["utterance_id"] = e.utterance_id;
      j["disposition"] = to_json(*e.disposition);
      j["task"] = e.task ? to_json(*e.task) : nlohmann::json(nullptr);
      break;
    case EventType::Claimed:
      j["task_id"] = e.task_id;
      j["analyst"] = e.analyst;
      break;
    case EventType::Expired:
      j["task_id"] = e.task_id;
      break;
    case EventType::Labeled:
      j["task_id"] = e.task_id;
      j["analyst"] = e.analyst;
      j["label"] = to_json(*e.label);
      break;
  }
  return j;
}

inline Event event_from_json(const nlohmann::json& j) {
  Event e;
  e.seq = j.at("seq").get<std::uint64_t>();
  e.type = enum_from(j.at("type").get<std::string>(),
                     {EventType::Routed, EventType::Claimed, EventType::Expired, EventType::Labeled});
  e.ts_ms = j.at("ts_ms").get<std::int64_t>();
  switch (e.type) {
    case EventType::Routed:
      e.utterance_id = j.at("utterance_id").get<std::string>();
      e.disposition = disposition_from_json(j.at("disposition"));
      if (!j.at("task").is_null()) e.task = task_from_json(j.at("task"));
      break;
    case EventType::Claimed:
      e.task_id = j.at("task_id").get<std::uint64_t>();
      e.analyst = j.at("analyst").get<std::string>();
      break;
    case EventType::Expired:
      e.task_id = j.at("task_id").get<std::uint64_t>();
      break;
    case EventType::Labeled:
      e.task_id = j.at("task_id").get<std::uint64_t>();
      e.analyst = j.at("analyst").get<std::string>();
      e.label = label_from_json(j.at("label"));
      break;
  }
  return e;
}

/// Append-only, newline-delimited JSON records. Sequence numbers start at 1.
/// Callers serialize appends (the router holds its state lock).
class EventLog {
 public:
  EventLog() = default;
  // Appends to `path`; `existing` are the records already in that file.
  explicit EventLog(const std::string& path, std::vector<Event> existing = {})
      : records_(std::move(existing)), path_(path), out_(path, std::ios::app | std::ios::binary) {
    if (!out_) throw Error("cannot open event log " + path);
  }

  const Event& append(Event e) {
    e.seq = records_.size() + 1;
    records_.push_back(std::move(e));
    if (out_.is_open()) {
      out_ << to_json(records_.back()).dump() << '\n';
      out_.flush();
    }
    return records_.back();
  }

  const std::vector<Event>& records() const { return records_; }
  std::string serialize() const {
    std::string out;
    for (const auto& e : records_) out += to_json(e).dump() + "\n";
    return out;
  }
  void flush() {
    if (out_.is_open()) out_.flush();
  }
  const std::optional<std::string>& path() const { return path_; }

 private:
  std::vector<Event> records_;
  std::optional<std::string> path_;
  std::ofstream out_;
};

inline std::vector<Event> parse_event_log(std::istream& in) {
  std::vector<Event> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      out.push_back(event_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw Error("corrupt event log record " + std::to_string(out.size()) + ": " + e.what());
    }
  }
  return out;
}

inline std::vector<Event> load_event_log(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read event log " + path);
  return parse_event_log(in);
}

/// Everything the router knows, keyed for deterministic comparison.
struct RouterState {
  std::map<std::uint64_t, AnalystTask> tasks;
  std::map<std::string, Disposition> dispositions;
  bool operator==(const RouterState&) const = default;
};

/// Rebuilds router state from a log. Every transition is checked against the
/// task state machine; a record that does not fit raises an error carrying
/// its zero-based index.
inline RouterState replay_log(const std::vector<Event>& log) {
  RouterState s;
  for (std::size_t i = 0; i < log.size(); ++i) {
    const Event& e = log[i];
    auto fail = [&](const std::string& why) {
      return Error("corrupt event log record " + std::to_string(i) + ": " + why);
    };
    if (e.seq != i + 1) throw fail("sequence number " + std::to_string(e.seq) + " out of order");
    auto task_in = [&](TaskState want) -> AnalystTask& {
      auto it = s.tasks.find(e.task_id);
      if (it == s.tasks.end()) throw fail("unknown task " + std::to_string(e.task_id));
      if (it->second.state != want)
        throw fail("task " + std::to_string(e.task_id) + " is " + to_string(it->second.state));
      return it->second;
    };
    switch (e.type) {
      case EventType::Routed: {
        if (!e.disposition) throw fail("routed record without disposition");
        if (!s.dispositions.emplace(e.utterance_id, *e.disposition).second)
          throw fail("duplicate utterance " + e.utterance_id);
        if (e.task) {
          if (e.task->state != TaskState::Queued) throw fail("new task must be QUEUED");
          if (!s.tasks.emplace(e.task->id, *e.task).second) throw fail("duplicate task id");
        }
        break;
      }
      case EventType::Claimed: {
        auto& t = task_in(TaskState::Queued);
        t.state = TaskState::Claimed;
        t.owner = e.analyst;
        t.claimed_ms = e.ts_ms;
        break;
      }
      case EventType::Expired: {
        auto& t = task_in(TaskState::Claimed);
        t.state = TaskState::Queued;
        t.owner.reset();
        t.claimed_ms.reset();
        break;
      }
      case EventType::Labeled: {
        auto& t = task_in(TaskState::Claimed);
        if (t.owner != e.analyst) throw fail("label from non-owner " + e.analyst);
        if (!e.label) throw fail("labeled record without label");
        t.state = TaskState::Labeled;
        t.label = e.label;
        t.labeled_ms = e.ts_ms;
        auto d = s.dispositions.find(t.utterance_id);
        if (d == s.dispositions.end()) throw fail("task for unknown utterance " + t.utterance_id);
        d->second.label = e.label;
        d->second.resolved = true;
        break;
      }
    }
  }
  return s;
}

}  // namespace lingate::router
