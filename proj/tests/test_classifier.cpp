#include <gtest/gtest.h>

#include <cmath>

#include "lingate/nlu/classifier.hpp"
#include "support.hpp"

using namespace lingate;
using lingate::testing::L;

TEST(Sigmoid, ReferenceValues) {
  EXPECT_DOUBLE_EQ(sigmoid_prob(0.0), 0.5);
  EXPECT_NEAR(sigmoid_prob(2.0), 0.8807970779778823, 1e-15);
  EXPECT_NEAR(sigmoid_prob(-2.0), 0.11920292202211755, 1e-15);
  EXPECT_GT(sigmoid_prob(800.0), 0.999);
  EXPECT_GE(sigmoid_prob(-800.0), 0.0);
}

TEST(Sigmoid, ComplementIdentity) {
  for (double s = -50.0; s <= 50.0; s += 0.125) EXPECT_NEAR(sigmoid_prob(s) + sigmoid_prob(-s), 1.0, 1e-12) << s;
}

TEST(Sigmoid, LogSigmoidMatchesLogOfSigmoid) {
  for (double s = -30.0; s <= 30.0; s += 0.5) EXPECT_NEAR(log_sigmoid(s), std::log(sigmoid_prob(s)), 1e-12) << s;
  EXPECT_NEAR(log_sigmoid(-1000.0), -1000.0, 1e-9);
}

TEST(Predict, TwoLabelExample) {
  auto p = predict_from_scores({{L("A"), 2.0}, {L("B"), 0.0}});
  EXPECT_EQ(p.best, L("A"));
  EXPECT_EQ(p.second, L("B"));
  EXPECT_NEAR(p.prob_best, 0.8807970779778823, 1e-12);
  EXPECT_DOUBLE_EQ(p.prob_second, 0.5);
  EXPECT_NEAR(p.confidence, 1.7615941559557646, 1e-12);
}

TEST(Predict, TieGoesToSmallerLabel) {
  auto p = predict_from_scores({{L("B"), 1.0}, {L("A"), 1.0}});
  EXPECT_EQ(p.best, L("A"));
  EXPECT_EQ(p.second, L("B"));
  EXPECT_DOUBLE_EQ(p.confidence, 1.0);
  // ties further down the joint label
  auto q = predict_from_scores({{L("A", "s", "z"), 3.0}, {L("A", "s", "b"), 3.0}, {L("A", "r", "z"), 1.0}});
  EXPECT_EQ(q.best, L("A", "s", "b"));
  EXPECT_EQ(q.second, L("A", "s", "z"));
}

TEST(Predict, SingleLabelUsesCap) {
  auto p = predict_from_scores({{L("A"), -3.0}});
  EXPECT_EQ(p.best, L("A"));
  EXPECT_EQ(p.second, L("A"));
  EXPECT_DOUBLE_EQ(p.confidence, kConfidenceCap);
  EXPECT_THROW(predict_from_scores({}), Error);
}

TEST(Predict, ExtremeScoresStayFiniteAndAtLeastOne) {
  auto p = predict_from_scores({{L("A"), -900.0}, {L("B"), -1000.0}});
  EXPECT_EQ(p.best, L("A"));
  EXPECT_TRUE(std::isfinite(p.confidence));
  EXPECT_GE(p.confidence, 1.0);
  EXPECT_LE(p.confidence, kConfidenceCap);
  EXPECT_GE(p.prob_second, kProbabilityFloor);
  auto q = predict_from_scores({{L("A"), 60.0}, {L("B"), -60.0}});
  EXPECT_DOUBLE_EQ(q.confidence, kConfidenceCap);
}

TEST(Predict, ArgmaxMatchesScoreMapAndIsMonotoneInvariant) {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    ScoreMap s, t;
    const std::size_t n = 2 + rng.below(6);
    for (std::size_t k = 0; k < n; ++k) {
      const double v = std::round((rng.uniform() * 8.0 - 4.0) * 4.0) / 4.0;  // force some ties
      s[L("t" + std::to_string(k))] = v;
      t[L("t" + std::to_string(k))] = std::exp(v) * 3.0 - 1.0;
    }
    const auto p = predict_from_scores(s);
    for (const auto& [label, v] : s) {
      EXPECT_LE(v, s.at(p.best));
      if (v == s.at(p.best)) {
        EXPECT_LE(p.best, label);
      }
    }
    EXPECT_EQ(predict_from_scores(t).best, p.best);
    EXPECT_EQ(p.confidence == 1.0, s.at(p.best) == s.at(p.second));
  }
}

TEST(Train, RejectsBadInput) {
  TrainParams params;
  EXPECT_THROW(train({}, params), Error);
  Corpus c{{"a", "en", "x", {"x", "y"}, L("A")}};
  EXPECT_THROW(train(c, params), Error);
  c[0].n_best.clear();
  params.epochs = 0;
  EXPECT_THROW(train(c, params), Error);
  params.epochs = 1;
  params.reg = 0.0;
  EXPECT_THROW(train(c, params), Error);
  params.reg = 20.0;
  EXPECT_THROW(train(c, params), Error);
}

TEST(Train, SeparableCorpusReachesLowTrainingError) {
  const auto corpus = lingate::testing::separable_corpus(500, 10, 5);
  TrainParams params;
  params.epochs = 50;
  const auto model = train(corpus, params);
  EXPECT_EQ(model.labels().size(), 10u);
  std::size_t errors = 0;
  for (const auto& ex : corpus) errors += model.predict_text(ex.text).best == ex.label ? 0 : 1;
  EXPECT_LE(static_cast<double>(errors) / static_cast<double>(corpus.size()), 0.01);
}

TEST(Train, DeterministicUnderSeed) {
  const auto corpus = lingate::testing::separable_corpus(120, 4, 2);
  TrainParams params;
  params.epochs = 3;
  const auto a = train(corpus, params), b = train(corpus, params);
  ASSERT_EQ(a.vocabulary(), b.vocabulary());
  for (std::size_t k = 0; k < a.labels().size(); ++k) {
    EXPECT_TRUE(std::equal(a.weights(k).begin(), a.weights(k).end(), b.weights(k).begin()));
    EXPECT_EQ(a.bias(k), b.bias(k));
  }
  params.seed = 99;
  const auto c = train(corpus, params);
  bool differs = false;
  for (std::size_t k = 0; k < a.labels().size(); ++k)
    differs |= !std::equal(a.weights(k).begin(), a.weights(k).end(), c.weights(k).begin());
  EXPECT_TRUE(differs);
}

TEST(Train, TokenBijectionPreservesScoresExactly) {
  const auto corpus = lingate::testing::separable_corpus(200, 5, 8);
  auto mapped = corpus;
  auto rename = [](const std::string& s) {
    std::string out;
    for (const auto& w : text::split_ws(s)) out += (out.empty() ? "" : " ") + std::string("zz") + std::to_string(fnv1a(w) % 100000) + w;
    return out;
  };
  for (auto& ex : mapped) ex.text = rename(ex.text);
  TrainParams params;
  params.epochs = 4;
  const auto a = train(corpus, params), b = train(mapped, params);
  const auto probes = lingate::testing::separable_corpus(50, 5, 77);
  for (const auto& ex : probes) {
    const auto sa = a.predict_text(ex.text), sb = b.predict_text(rename(ex.text));
    EXPECT_EQ(sa.scores, sb.scores);
    EXPECT_EQ(sa.confidence, sb.confidence);
  }
}

TEST(Model, FromPartsValidates) {
  using M = ClassifierModel;
  EXPECT_THROW(M::from_parts({}, {}, {}, {}, {}), Error);
  EXPECT_THROW(M::from_parts({L("B"), L("A")}, {}, {{}, {}}, {0, 0}, {}), Error);
  EXPECT_THROW(M::from_parts({L("A")}, {"x", "x"}, {{1, 2}}, {0}, {}), Error);
  EXPECT_THROW(M::from_parts({L("A")}, {"x"}, {{1, 2}}, {0}, {}), Error);
  auto m = M::from_parts({L("A"), L("B")}, {"pay", "bill"}, {{1, 0}, {0, 1}}, {0, 0.5}, {});
  auto s = m.score(extract_features("pay pay unknown", {1, 1}));
  EXPECT_DOUBLE_EQ(s.at(L("A")), 2.0);
  EXPECT_DOUBLE_EQ(s.at(L("B")), 0.5);
}
