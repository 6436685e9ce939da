#include <gtest/gtest.h>

#include "lingate/router/pipeline.hpp"
#include "support.hpp"

using namespace lingate;
using namespace lingate::router;
using lingate::testing::L;

namespace {
Pipeline bridge_pipeline(double asr_conf, double mt_conf, std::vector<double> bias, calibration::ThresholdSet th) {
  Pipeline p;
  p.mode = PipelineMode::OnlineBridge;
  p.asr = std::make_shared<lingate::testing::StubAsr>(asr_conf);
  p.mt = std::make_shared<lingate::testing::StubMt>(mt_conf);
  p.model = lingate::testing::constant_model({L("A"), L("B")}, std::move(bias));
  p.thresholds = th;
  return p;
}
}  // namespace

TEST(Gates, AcceptAllAutomates) {
  const auto ev = evaluate_gates(bridge_pipeline(0.9, 0.9, {2.0, 0.0}, {0, 0, 0}), "quiero pagar");
  EXPECT_EQ(ev.outcome, Outcome::Automated);
  ASSERT_EQ(ev.trace.size(), 3u);
  EXPECT_EQ(ev.prediction->best, L("A"));
  EXPECT_EQ(ev.translation, "Quiero pagar.");
  for (const auto& g : ev.trace) EXPECT_TRUE(g.passed);
}

TEST(Gates, AsrFailureGoesToSourcePool) {
  const auto ev = evaluate_gates(bridge_pipeline(0.2, 0.9, {2.0, 0.0}, {0.5, 0, 0}), "quiero pagar");
  EXPECT_EQ(ev.outcome, Outcome::SourceAnalyst);
  ASSERT_EQ(ev.trace.size(), 1u);
  EXPECT_EQ(ev.trace[0].stage, Stage::Asr);
  EXPECT_FALSE(ev.trace[0].passed);
  EXPECT_DOUBLE_EQ(ev.trace[0].confidence, 0.2);
  EXPECT_EQ(ev.payload, "quiero pagar");
}

TEST(Gates, MtFailureGoesToSourcePool) {
  const auto ev = evaluate_gates(bridge_pipeline(0.9, 0.1, {2.0, 0.0}, {0, 0.5, 0}), "quiero pagar");
  EXPECT_EQ(ev.outcome, Outcome::SourceAnalyst);
  ASSERT_EQ(ev.trace.size(), 2u);
  EXPECT_EQ(ev.trace[1].stage, Stage::Mt);
  EXPECT_FALSE(ev.prediction.has_value());
}

TEST(Gates, NluFailureGoesToTargetPoolWithTranslation) {
  // scores {A: 0.1, B: 0.0} give a confidence of about 1.05
  auto p = bridge_pipeline(0.9, 0.9, {0.1, 0.0}, {0, 0, 1.3});
  const auto ev = evaluate_gates(p, "quiero pagar");
  EXPECT_NEAR(ev.trace.back().confidence, sigmoid_prob(0.1) / 0.5, 1e-12);
  EXPECT_EQ(ev.outcome, Outcome::TargetAnalyst);
  EXPECT_EQ(ev.trace.back().stage, Stage::Nlu);
  EXPECT_EQ(ev.payload, "Quiero pagar.");
}

TEST(Gates, StrictComparison) {
  const auto ev = evaluate_gates(bridge_pipeline(0.5, 0.5, {2.0, 0.0}, {0.5, 0.5, 0}), "x");
  EXPECT_EQ(ev.outcome, Outcome::Automated);
}

TEST(Gates, AdapterFailureIsConfidenceZero) {
  auto p = bridge_pipeline(0.9, 0.9, {2.0, 0.0}, {0.1, 0, 0});
  p.asr = std::make_shared<lingate::testing::StubAsr>(0.9, true);
  auto ev = evaluate_gates(p, "x");
  EXPECT_EQ(ev.outcome, Outcome::SourceAnalyst);
  EXPECT_DOUBLE_EQ(ev.trace[0].confidence, 0.0);
  EXPECT_EQ(ev.payload, "x");
  p = bridge_pipeline(0.9, 0.9, {2.0, 0.0}, {0, 0.1, 0});
  p.mt = std::make_shared<lingate::testing::StubMt>(0.9, true);
  ev = evaluate_gates(p, "x");
  EXPECT_EQ(ev.failed, Stage::Mt);
  EXPECT_DOUBLE_EQ(ev.trace[1].confidence, 0.0);
}

TEST(Gates, AdapterFailureWithZeroThresholdStillPasses) {
  auto p = bridge_pipeline(0.9, 0.9, {2.0, 0.0}, {0, 0, 0});
  p.asr = std::make_shared<lingate::testing::StubAsr>(0.9, true);
  EXPECT_EQ(evaluate_gates(p, "x").outcome, Outcome::Automated);
}

TEST(Gates, NativeModeSkipsMtAndEscalatesToSource) {
  auto p = bridge_pipeline(0.9, 0.9, {0.1, 0.0}, {0, 0, 1.3});
  p.mode = PipelineMode::Native;
  auto mt = std::make_shared<lingate::testing::StubMt>(0.9);
  p.mt = mt;
  const auto ev = evaluate_gates(p, "quiero pagar");
  ASSERT_EQ(ev.trace.size(), 2u);
  EXPECT_EQ(ev.trace[1].stage, Stage::Nlu);
  EXPECT_EQ(ev.outcome, Outcome::SourceAnalyst);
  EXPECT_EQ(ev.payload, "quiero pagar");
  EXPECT_EQ(mt->calls.load(), 0);
}

TEST(Gates, InfiniteNluThresholdNeverAutomates) {
  const auto ev = evaluate_gates(bridge_pipeline(1, 1, {50.0, -50.0}, {0, 0, kInfinity}), "x");
  EXPECT_NE(ev.outcome, Outcome::Automated);
}

TEST(PipelineValidate, RequiresAdapters) {
  Pipeline p;
  EXPECT_THROW(p.validate(), Error);
  p = bridge_pipeline(1, 1, {0, 0}, {0, 0, 0});
  p.mt.reset();
  EXPECT_THROW(p.validate(), Error);
  p.mode = PipelineMode::Native;
  EXPECT_NO_THROW(p.validate());
  p.thresholds.tau_nlu = -1;
  EXPECT_THROW(p.validate(), Error);
}
