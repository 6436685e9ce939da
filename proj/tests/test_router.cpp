#include <gtest/gtest.h>

#include <set>
#include <thread>

#include "lingate/router/router.hpp"
#include "support.hpp"

using namespace lingate;
using namespace lingate::router;
using lingate::testing::L;

namespace {
struct ManualClock {
  std::shared_ptr<std::int64_t> now = std::make_shared<std::int64_t>(1000);
  Clock fn() const {
    auto n = now;
    return [n] { return *n; };
  }
};

Pipeline pipeline(double tau_nlu, double asr_conf = 1.0) {
  Pipeline p;
  p.mode = PipelineMode::OnlineBridge;
  p.asr = std::make_shared<lingate::testing::StubAsr>(asr_conf);
  p.mt = std::make_shared<lingate::testing::StubMt>(1.0);
  p.model = lingate::testing::constant_model({L("A"), L("B")}, {0.1, 0.0});
  p.thresholds = {0.5, 0.0, tau_nlu};
  return p;
}

RouterOptions options(const ManualClock& clock, std::int64_t timeout = 1000) {
  RouterOptions o;
  o.claim_timeout_ms = timeout;
  o.catalog = LabelCatalog::from_labels(std::vector<JointLabel>{L("A"), L("B")}, "catalog.tsv");
  o.clock = clock.fn();
  return o;
}
}  // namespace

TEST(Router, AutomatedAcceptAll) {
  ManualClock clock;
  Router r(pipeline(0.0), options(clock));
  const auto d = r.route({"u1", "quiero pagar"});
  EXPECT_EQ(d.outcome, Outcome::Automated);
  EXPECT_TRUE(d.resolved);
  EXPECT_EQ(d.label, L("A"));
  EXPECT_FALSE(d.task_id.has_value());
  EXPECT_EQ(r.events().size(), 1u);
}

TEST(Router, EscalationCreatesTask) {
  ManualClock clock;
  Router r(pipeline(kInfinity), options(clock));
  const auto d = r.route({"u1", "quiero pagar"});
  EXPECT_EQ(d.outcome, Outcome::TargetAnalyst);
  EXPECT_FALSE(d.resolved);
  ASSERT_TRUE(d.task_id.has_value());
  const auto tasks = r.list_tasks(Pool::Target);
  ASSERT_EQ(tasks.size(), 1u);
  EXPECT_EQ(tasks[0].payload, "Quiero pagar.");
  EXPECT_EQ(tasks[0].state, TaskState::Queued);
  EXPECT_EQ(tasks[0].failed_gate.stage, Stage::Nlu);
  EXPECT_TRUE(r.list_tasks(Pool::Source).empty());
}

TEST(Router, DuplicateIdAndEmptyId) {
  ManualClock clock;
  Router r(pipeline(0.0), options(clock));
  r.route({"u1", "x"});
  try {
    r.route({"u1", "y"});
    FAIL();
  } catch (const RouterError& e) {
    EXPECT_EQ(e.kind(), RouterError::Kind::Conflict);
  }
  EXPECT_THROW(r.route({"", "y"}), RouterError);
}

TEST(Router, ClaimSubmitResolves) {
  ManualClock clock;
  Router r(pipeline(kInfinity), options(clock));
  r.route({"u1", "x"});
  EXPECT_FALSE(r.claim_task(Pool::Source, "ana").has_value());
  const auto t = r.claim_task(Pool::Target, "ana");
  ASSERT_TRUE(t);
  EXPECT_EQ(t->state, TaskState::Claimed);
  EXPECT_EQ(t->owner, "ana");
  EXPECT_FALSE(r.claim_task(Pool::Target, "bo").has_value());
  const auto before = r.events().size();
  const auto d = r.submit_label(t->id, "ana", L("B"));
  EXPECT_TRUE(d.resolved);
  EXPECT_EQ(d.label, L("B"));
  EXPECT_EQ(r.events().size(), before + 1);
  EXPECT_EQ(r.task(t->id)->state, TaskState::Labeled);
  EXPECT_EQ(r.disposition("u1")->label, L("B"));
  // repeated identical submit is idempotent
  EXPECT_EQ(r.submit_label(t->id, "ana", L("B")).label, L("B"));
  EXPECT_EQ(r.events().size(), before + 1);
}

TEST(Router, SubmitErrorsLeaveTaskUnchanged) {
  ManualClock clock;
  Router r(pipeline(kInfinity), options(clock));
  r.route({"u1", "x"});
  const auto t = r.claim_task(Pool::Target, "ana");
  auto expect_kind = [&](RouterError::Kind k, auto&& f) {
    try {
      f();
      ADD_FAILURE() << "expected RouterError";
    } catch (const RouterError& e) {
      EXPECT_EQ(e.kind(), k) << e.what();
    }
  };
  const auto events = r.events().size();
  expect_kind(RouterError::Kind::Forbidden, [&] { r.submit_label(t->id, "bo", L("A")); });
  expect_kind(RouterError::Kind::InvalidArgument, [&] { r.submit_label(t->id, "ana", L("Z")); });
  expect_kind(RouterError::Kind::NotFound, [&] { r.submit_label(999, "ana", L("A")); });
  EXPECT_EQ(r.task(t->id)->state, TaskState::Claimed);
  EXPECT_EQ(r.task(t->id)->owner, "ana");
  EXPECT_EQ(r.events().size(), events);
  try {
    r.submit_label(t->id, "ana", L("Z"));
  } catch (const RouterError& e) {
    EXPECT_NE(std::string(e.what()).find("catalog.tsv"), std::string::npos);
  }
  r.submit_label(t->id, "ana", L("A"));
  expect_kind(RouterError::Kind::Conflict, [&] { r.submit_label(t->id, "ana", L("B")); });
}

TEST(Router, ClaimExpiresBackToQueue) {
  ManualClock clock;
  Router r(pipeline(kInfinity), options(clock, 1000));
  r.route({"u1", "x"});
  const auto t = r.claim_task(Pool::Target, "ana");
  *clock.now += 999;
  EXPECT_EQ(r.task(t->id)->state, TaskState::Claimed);
  *clock.now += 1;
  r.expire_claims();
  EXPECT_EQ(r.task(t->id)->state, TaskState::Queued);
  EXPECT_FALSE(r.task(t->id)->owner.has_value());
  try {
    r.submit_label(t->id, "ana", L("A"));
    FAIL();
  } catch (const RouterError& e) {
    EXPECT_EQ(e.kind(), RouterError::Kind::Conflict);
  }
  const auto again = r.claim_task(Pool::Target, "bo");
  ASSERT_TRUE(again);
  EXPECT_EQ(again->id, t->id);
  EXPECT_EQ(r.events().back().type, EventType::Claimed);
}

TEST(Router, ClaimsOldestFirst) {
  ManualClock clock;
  Router r(pipeline(kInfinity), options(clock));
  for (int i = 0; i < 3; ++i) r.route({"u" + std::to_string(i), "x"});
  EXPECT_EQ(r.claim_task(Pool::Target, "a")->utterance_id, "u0");
  EXPECT_EQ(r.claim_task(Pool::Target, "a")->utterance_id, "u1");
}

TEST(Router, ConcurrentClaimersGetDistinctTasks) {
  Router r(pipeline(kInfinity), RouterOptions{300000, LabelCatalog::from_labels(std::vector<JointLabel>{L("A")}), system_clock_ms, {}});
  for (int i = 0; i < 10; ++i) r.route({"u" + std::to_string(i), "x"});
  std::vector<std::optional<AnalystTask>> got(100);
  std::vector<std::thread> threads;
  for (int i = 0; i < 100; ++i)
    threads.emplace_back([&, i] { got[i] = r.claim_task(Pool::Target, "analyst" + std::to_string(i)); });
  for (auto& t : threads) t.join();
  std::set<std::uint64_t> ids;
  std::size_t successes = 0;
  for (const auto& g : got)
    if (g) {
      ++successes;
      ids.insert(g->id);
    }
  EXPECT_EQ(successes, 10u);
  EXPECT_EQ(ids.size(), 10u);
}

TEST(Router, ConcurrentRoutingPartitionsBatch) {
  Router r(pipeline(1.01, 1.0), RouterOptions{300000, {}, system_clock_ms, {}});
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t)
    threads.emplace_back([&, t] {
      for (int i = 0; i < 50; ++i) r.route({"t" + std::to_string(t) + "-" + std::to_string(i), "x"});
    });
  for (auto& t : threads) t.join();
  const auto s = r.stats();
  EXPECT_EQ(s.total(), 400u);
  EXPECT_EQ(r.events().size(), 400u);
  for (std::size_t i = 0; i < r.events().size(); ++i) EXPECT_EQ(r.events()[i].seq, i + 1);
}

TEST(Router, StatsCountQueuesAndOutcomes) {
  ManualClock clock;
  Router r(pipeline(kInfinity), options(clock));
  r.route({"a", "x"});
  *clock.now += 50;
  r.route({"b", "x"});
  const auto t = r.claim_task(Pool::Target, "ana");
  *clock.now += 10;
  const auto s = r.stats();
  EXPECT_EQ(s.target.queued, 1u);
  EXPECT_EQ(s.target.claimed, 1u);
  EXPECT_EQ(s.target.oldest_queued_age_ms, 10);
  EXPECT_EQ(s.target_analyst, 2u);
  EXPECT_EQ(s.pending, 2u);
  EXPECT_DOUBLE_EQ(s.automation_rate(), 0.0);
  r.submit_label(t->id, "ana", L("A"));
  EXPECT_EQ(r.stats().pending, 1u);
}

TEST(Router, RejectsBadOptions) {
  ManualClock clock;
  auto o = options(clock, 0);
  EXPECT_THROW(Router(pipeline(0.0), o), Error);
}
