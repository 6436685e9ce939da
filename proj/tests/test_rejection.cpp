#include <gtest/gtest.h>

#include <algorithm>

#include "lingate/common.hpp"
#include "lingate/metrics/rejection.hpp"

using namespace lingate;
using namespace lingate::metrics;

namespace {
std::vector<ScoredOutcome> ten_with_two_low_errors() {
  std::vector<ScoredOutcome> items;
  for (int i = 0; i < 10; ++i) items.push_back({1.0 + 0.1 * i, i >= 2});
  return items;
}
}  // namespace

TEST(ErrorRejection, AllCorrectIsZeroEverywhere) {
  std::vector<ScoredOutcome> items(10, {1.5, true});
  const auto c = error_rejection_curve(items, std::vector<double>{0.0, 0.1, 0.2});
  for (const auto& p : c.points) EXPECT_DOUBLE_EQ(p.error_rate, 0.0);
}

TEST(ErrorRejection, TwoLowestIncorrect) {
  const auto items = ten_with_two_low_errors();
  const auto c = error_rejection_curve(items, std::vector<double>{0.0, 0.1, 0.2});
  ASSERT_EQ(c.points.size(), 3u);
  EXPECT_DOUBLE_EQ(c.points[0].error_rate, 0.2);
  EXPECT_DOUBLE_EQ(c.points[1].error_rate, 1.0 / 9.0);
  EXPECT_DOUBLE_EQ(c.points[2].error_rate, 0.0);
  EXPECT_EQ(c.points[1].evaluated, 9u);
  EXPECT_EQ(c.sample_count, 10u);
  EXPECT_DOUBLE_EQ(c.error_at(0.1), 1.0 / 9.0);
  EXPECT_THROW(c.error_at(0.3), Error);
}

TEST(ErrorRejection, ZeroPointIsAlwaysPresent) {
  const auto c = error_rejection_curve(ten_with_two_low_errors(), std::vector<double>{0.2});
  ASSERT_EQ(c.points.size(), 2u);
  EXPECT_DOUBLE_EQ(c.points[0].rejection_fraction, 0.0);
  EXPECT_EQ(c.points[0].evaluated, 10u);
}

TEST(ErrorRejection, TiesKeepInputOrder) {
  // Equal confidences: the later items are the ones rejected.
  std::vector<ScoredOutcome> items{{1.0, true}, {1.0, true}, {1.0, false}, {1.0, false}};
  EXPECT_DOUBLE_EQ(error_rejection_curve(items, std::vector<double>{0.5}).error_at(0.5), 0.0);
  std::reverse(items.begin(), items.end());
  EXPECT_DOUBLE_EQ(error_rejection_curve(items, std::vector<double>{0.5}).error_at(0.5), 1.0);
}

TEST(ErrorRejection, FloorOfRejectedCount) {
  EXPECT_EQ(rejected_count(0.1, 10), 1u);
  EXPECT_EQ(rejected_count(0.2, 10), 2u);
  EXPECT_EQ(rejected_count(0.1, 15), 1u);
  EXPECT_EQ(rejected_count(0.3, 10), 3u);  // 0.3 * 10 is 2.9999999999999996
  EXPECT_EQ(rejected_count(0.0, 0), 0u);
}

TEST(ErrorRejection, Errors) {
  EXPECT_THROW(error_rejection_curve({}, std::vector<double>{0.1}), Error);
  const auto items = ten_with_two_low_errors();
  EXPECT_THROW(error_rejection_curve(items, std::vector<double>{1.0}), Error);
  EXPECT_THROW(error_rejection_curve(items, std::vector<double>{-0.1}), Error);
  EXPECT_THROW(error_rejection_curve(items, std::vector<double>{0.2, 0.1}), Error);
}

TEST(ErrorRejection, OracleConfidenceGivesNonIncreasingError) {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ScoredOutcome> items;
    const std::size_t n = 1 + rng.below(60);
    for (std::size_t i = 0; i < n; ++i) {
      const bool ok = rng.bernoulli(0.7);
      items.push_back({ok ? 2.0 + rng.uniform() : 1.0 + rng.uniform(), ok});
    }
    std::vector<double> fr;
    for (int k = 0; k < 10; ++k) fr.push_back(k / 10.0);
    const auto c = error_rejection_curve(items, fr);
    for (std::size_t i = 1; i < c.points.size(); ++i)
      EXPECT_LE(c.points[i].error_rate, c.points[i - 1].error_rate + 1e-15);
  }
}
