#pragma once

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lingate/router/event_log.hpp"
#include "lingate/router/pipeline.hpp"

namespace lingate::router {

class RouterError : public Error {
 public:
  enum class Kind { NotFound, Conflict, Forbidden, InvalidArgument };
  RouterError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

using Clock = std::function<std::int64_t()>;

inline std::int64_t system_clock_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

struct RouterOptions {
  std::int64_t claim_timeout_ms = 300'000;
  LabelCatalog catalog;
  Clock clock = system_clock_ms;
  std::optional<std::string> event_log_path;
};

struct Utterance {
  std::string id;
  std::string input;  // audio reference; gold text for the simulator
};

struct PoolStats {
  std::size_t queued = 0;
  std::size_t claimed = 0;
  std::size_t labeled = 0;
  std::optional<std::int64_t> oldest_queued_age_ms;
};

struct RouterStats {
  PoolStats source;
  PoolStats target;
  std::size_t automated = 0;
  std::size_t source_analyst = 0;
  std::size_t target_analyst = 0;
  std::size_t pending = 0;
  std::size_t total() const { return automated + source_analyst + target_analyst; }
  double automation_rate() const {
    return total() ? static_cast<double>(automated) / static_cast<double>(total()) : 0.0;
  }
};

/// The confidence-gated router with its analyst queues. All state lives
/// behind one mutex, so route, claim and submit are linearizable and the
/// event log is written in the same order the state changes.
class Router {
 public:
  Router(Pipeline pipeline, RouterOptions options)
      : pipeline_(with_serialized_adapters(std::move(pipeline))), options_(std::move(options)) {
    pipeline_.validate();
    if (options_.claim_timeout_ms <= 0) throw Error("claim timeout must be positive");
    if (!options_.clock) options_.clock = system_clock_ms;
    if (options_.event_log_path) resume(*options_.event_log_path);
  }

  Router(const Router&) = delete;
  Router& operator=(const Router&) = delete;

  const Pipeline& pipeline() const { return pipeline_; }
  const LabelCatalog& catalog() const { return options_.catalog; }

  /// Adapters run outside the lock; only the state change is serialized.
  Disposition route(const Utterance& u) {
    if (u.id.empty()) throw RouterError(RouterError::Kind::InvalidArgument, "utterance id must not be empty");
    auto ev = evaluate_gates(pipeline_, u.input);

    std::lock_guard lock(mu_);
    if (state_.dispositions.count(u.id))
      throw RouterError(RouterError::Kind::Conflict, "duplicate utterance id " + u.id);
    const auto now = options_.clock();
    Disposition d;
    d.utterance_id = u.id;
    d.outcome = ev.outcome;
    d.trace = std::move(ev.trace);
    d.transcript = std::move(ev.transcript);
    d.translation = std::move(ev.translation);
    Event rec;
    rec.type = EventType::Routed;
    rec.ts_ms = now;
    rec.utterance_id = u.id;
    if (ev.outcome == Outcome::Automated) {
      d.label = ev.prediction->best;
      d.resolved = true;
    } else {
      AnalystTask t;
      t.id = next_task_id_++;
      t.utterance_id = u.id;
      t.pool = ev.outcome == Outcome::TargetAnalyst ? Pool::Target : Pool::Source;
      t.payload = std::move(ev.payload);
      t.failed_gate = *d.failed_gate();
      t.created_ms = now;
      d.task_id = t.id;
      queued_[t.pool].insert(t.id);
      rec.task = t;
      state_.tasks.emplace(t.id, std::move(t));
    }
    rec.disposition = d;
    state_.dispositions.emplace(u.id, d);
    log_.append(std::move(rec));
    return d;
  }

  /// Oldest queued task in the pool moves to CLAIMED for `analyst`.
  std::optional<AnalystTask> claim_task(Pool pool, const std::string& analyst) {
    if (analyst.empty()) throw RouterError(RouterError::Kind::InvalidArgument, "analyst id must not be empty");
    std::lock_guard lock(mu_);
    const auto now = options_.clock();
    expire_stale_locked(now);
    auto& q = queued_[pool];
    if (q.empty()) return std::nullopt;
    const auto id = *q.begin();
    q.erase(q.begin());
    auto& t = state_.tasks.at(id);
    t.state = TaskState::Claimed;
    t.owner = analyst;
    t.claimed_ms = now;
    claimed_.insert(id);
    Event rec;
    rec.type = EventType::Claimed;
    rec.ts_ms = now;
    rec.task_id = id;
    rec.analyst = analyst;
    log_.append(std::move(rec));
    return t;
  }

  Disposition submit_label(std::uint64_t task_id, const std::string& analyst, const JointLabel& label) {
    std::lock_guard lock(mu_);
    const auto now = options_.clock();
    expire_stale_locked(now);
    auto it = state_.tasks.find(task_id);
    if (it == state_.tasks.end())
      throw RouterError(RouterError::Kind::NotFound, "no task " + std::to_string(task_id));
    auto& t = it->second;
    // A repeated identical submit by the owner is answered without a new event.
    if (t.state == TaskState::Labeled && t.owner == analyst && t.label == label)
      return state_.dispositions.at(t.utterance_id);
    if (t.state != TaskState::Claimed)
      throw RouterError(RouterError::Kind::Conflict,
                        "task " + std::to_string(task_id) + " is " + to_string(t.state) + ", not CLAIMED");
    if (t.owner != analyst)
      throw RouterError(RouterError::Kind::Forbidden,
                        "task " + std::to_string(task_id) + " is claimed by another analyst");
    if (!options_.catalog.contains(label))
      throw RouterError(RouterError::Kind::InvalidArgument,
                        "label " + label.str() + " is not in the catalog (" + options_.catalog.source() + ")");
    t.state = TaskState::Labeled;
    t.label = label;
    t.labeled_ms = now;
    claimed_.erase(task_id);
    auto& d = state_.dispositions.at(t.utterance_id);
    d.label = label;
    d.resolved = true;
    Event rec;
    rec.type = EventType::Labeled;
    rec.ts_ms = now;
    rec.task_id = task_id;
    rec.analyst = analyst;
    rec.label = label;
    log_.append(std::move(rec));
    return d;
  }

  std::optional<Disposition> disposition(const std::string& utterance_id) const {
    std::lock_guard lock(mu_);
    auto it = state_.dispositions.find(utterance_id);
    if (it == state_.dispositions.end()) return std::nullopt;
    return it->second;
  }

  std::optional<AnalystTask> task(std::uint64_t id) const {
    std::lock_guard lock(mu_);
    auto it = state_.tasks.find(id);
    if (it == state_.tasks.end()) return std::nullopt;
    return it->second;
  }

  std::vector<AnalystTask> list_tasks(Pool pool, std::optional<TaskState> state = std::nullopt) {
    std::lock_guard lock(mu_);
    expire_stale_locked(options_.clock());
    std::vector<AnalystTask> out;
    for (const auto& [id, t] : state_.tasks)
      if (t.pool == pool && (!state || t.state == *state)) out.push_back(t);
    return out;
  }

  RouterStats stats() {
    std::lock_guard lock(mu_);
    const auto now = options_.clock();
    expire_stale_locked(now);
    RouterStats s;
    for (const auto& [id, t] : state_.tasks) {
      auto& p = t.pool == Pool::Source ? s.source : s.target;
      switch (t.state) {
        case TaskState::Queued: {
          ++p.queued;
          const auto age = now - t.created_ms;
          if (!p.oldest_queued_age_ms || age > *p.oldest_queued_age_ms) p.oldest_queued_age_ms = age;
          break;
        }
        case TaskState::Claimed: ++p.claimed; break;
        case TaskState::Labeled: ++p.labeled; break;
      }
    }
    for (const auto& [id, d] : state_.dispositions) {
      switch (d.outcome) {
        case Outcome::Automated: ++s.automated; break;
        case Outcome::SourceAnalyst: ++s.source_analyst; break;
        case Outcome::TargetAnalyst: ++s.target_analyst; break;
      }
      if (!d.resolved) ++s.pending;
    }
    return s;
  }

  // Applies claim expiry at the current clock without any other change.
  void expire_claims() {
    std::lock_guard lock(mu_);
    expire_stale_locked(options_.clock());
  }

  RouterState snapshot() const {
    std::lock_guard lock(mu_);
    return state_;
  }

  std::vector<Event> events() const {
    std::lock_guard lock(mu_);
    return log_.records();
  }

  std::string serialized_log() const {
    std::lock_guard lock(mu_);
    return log_.serialize();
  }

  void flush() {
    std::lock_guard lock(mu_);
    log_.flush();
  }

 private:
  // Rebuilds state from an existing log file, then keeps appending to it.
  void resume(const std::string& path) {
    std::vector<Event> existing;
    if (std::filesystem::exists(path)) existing = load_event_log(path);
    state_ = replay_log(existing);
    for (const auto& [id, t] : state_.tasks) {
      if (t.state == TaskState::Queued) queued_[t.pool].insert(id);
      if (t.state == TaskState::Claimed) claimed_.insert(id);
      next_task_id_ = std::max(next_task_id_, id + 1);
    }
    log_ = EventLog(path, std::move(existing));
  }

  void expire_stale_locked(std::int64_t now) {
    for (auto it = claimed_.begin(); it != claimed_.end();) {
      auto& t = state_.tasks.at(*it);
      if (*t.claimed_ms + options_.claim_timeout_ms <= now) {
        t.state = TaskState::Queued;
        t.owner.reset();
        t.claimed_ms.reset();
        queued_[t.pool].insert(t.id);
        Event rec;
        rec.type = EventType::Expired;
        rec.ts_ms = now;
        rec.task_id = t.id;
        log_.append(std::move(rec));
        it = claimed_.erase(it);
      } else {
        ++it;
      }
    }
  }

  Pipeline pipeline_;
  RouterOptions options_;
  mutable std::mutex mu_;
  RouterState state_;
  std::map<Pool, std::set<std::uint64_t>> queued_;  // ascending id = oldest first
  std::set<std::uint64_t> claimed_;
  std::uint64_t next_task_id_ = 1;
  EventLog log_;
};

}  // namespace lingate::router
