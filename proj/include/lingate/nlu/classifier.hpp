#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "lingate/common.hpp"
#include "lingate/corpus.hpp"
#include "lingate/nlu/features.hpp"
#include "lingate/nlu/joint_label.hpp"

namespace lingate {

struct TrainParams {
  NgramRange ngrams{1, 2};
  int epochs = 10;
  double reg = 1e-4;          // L2 strength
  double learning_rate = 0.1; // initial step; decays as lr / (1 + lr * reg * t)
  std::uint64_t seed = 1;

  bool operator==(const TrainParams&) const = default;
};

using ScoreMap = std::map<JointLabel, double>;

inline constexpr double kConfidenceCap = 1e9;
inline constexpr double kProbabilityFloor = 1e-9;

/// Logistic squashing of a classifier margin. Increasing in `s`; evaluated
/// in the branch that never exponentiates a positive argument.
inline double sigmoid_prob(double s) {
  if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
  const double e = std::exp(s);
  return e / (1.0 + e);
}

inline double log_sigmoid(double s) {
  return s >= 0.0 ? -std::log1p(std::exp(-s)) : s - std::log1p(std::exp(s));
}

struct Prediction {
  JointLabel best;
  JointLabel second;
  ScoreMap scores;
  double prob_best = 0.0;
  double prob_second = 0.0;
  double confidence = 1.0;  // prob_best / prob_second, in [1, kConfidenceCap]
};

// The ratio is taken in log space so that two very negative margins still
// give a finite ratio >= 1 instead of dividing two underflowed values.
inline double confidence_ratio(double best_score, double second_score) {
  const double diff = log_sigmoid(best_score) - log_sigmoid(second_score);
  if (!(diff < std::log(kConfidenceCap))) return kConfidenceCap;
  return std::max(1.0, std::exp(diff));
}

/// Best and runner-up by score; ties go to the lexicographically smaller
/// label. A single-label score map reports the label twice with the capped
/// confidence.
inline Prediction predict_from_scores(ScoreMap scores) {
  if (scores.empty()) throw Error("cannot predict from an empty score map");
  const JointLabel* best = nullptr;
  const JointLabel* second = nullptr;
  double s1 = 0.0, s2 = 0.0;
  // std::map iterates in label order, so strict '>' keeps the smaller label on ties.
  for (const auto& [label, s] : scores) {
    if (!best || s > s1) {
      second = best;
      s2 = s1;
      best = &label;
      s1 = s;
    } else if (!second || s > s2) {
      second = &label;
      s2 = s;
    }
  }
  Prediction p;
  p.best = *best;
  p.prob_best = std::max(sigmoid_prob(s1), kProbabilityFloor);
  if (second) {
    p.second = *second;
    p.prob_second = std::max(sigmoid_prob(s2), kProbabilityFloor);
    p.confidence = confidence_ratio(s1, s2);
  } else {
    p.second = *best;
    p.prob_second = p.prob_best;
    p.confidence = kConfidenceCap;
  }
  p.scores = std::move(scores);
  return p;
}

/// One linear scorer per joint label over a shared n-gram vocabulary.
/// Immutable once built; share it through `std::shared_ptr<const ...>`.
class ClassifierModel {
 public:
  struct Metadata {
    TrainParams params;
    std::size_t training_examples = 0;
  };

  static ClassifierModel from_parts(std::vector<JointLabel> labels, std::vector<std::string> vocabulary,
                                    std::vector<std::vector<double>> weights, std::vector<double> bias,
                                    Metadata metadata) {
    if (labels.empty()) throw Error("model needs at least one label");
    if (weights.size() != labels.size() || bias.size() != labels.size())
      throw Error("model needs exactly one weight vector and bias per label");
    if (!std::is_sorted(labels.begin(), labels.end()) ||
        std::adjacent_find(labels.begin(), labels.end()) != labels.end())
      throw Error("model label index must be sorted and unique");
    ClassifierModel m;
    for (std::size_t i = 0; i < vocabulary.size(); ++i) {
      if (!m.index_.emplace(vocabulary[i], static_cast<std::uint32_t>(i)).second)
        throw Error("duplicate vocabulary entry: " + vocabulary[i]);
    }
    for (const auto& w : weights) {
      if (w.size() != vocabulary.size()) throw Error("weight vector length differs from vocabulary");
    }
    m.labels_ = std::move(labels);
    m.vocab_ = std::move(vocabulary);
    m.weights_ = std::move(weights);
    m.bias_ = std::move(bias);
    m.meta_ = metadata;
    return m;
  }

  const std::vector<JointLabel>& labels() const { return labels_; }
  const std::vector<std::string>& vocabulary() const { return vocab_; }
  std::span<const double> weights(std::size_t label) const { return weights_.at(label); }
  double bias(std::size_t label) const { return bias_.at(label); }
  const Metadata& metadata() const { return meta_; }
  NgramRange ngrams() const { return meta_.params.ngrams; }

  std::optional<std::uint32_t> feature_index(std::string_view key) const {
    auto it = index_.find(std::string(key));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  ScoreMap score(const FeatureVector& features) const {
    std::vector<std::pair<std::uint32_t, double>> active;
    active.reserve(features.size());
    for (const auto& [key, count] : features.entries()) {
      if (auto idx = feature_index(key)) active.emplace_back(*idx, static_cast<double>(count));
    }
    ScoreMap out;
    for (std::size_t k = 0; k < labels_.size(); ++k) {
      const auto& w = weights_[k];
      double s = 0.0;
      for (const auto& [idx, value] : active) s += w[idx] * value;
      out.emplace(labels_[k], s + bias_[k]);
    }
    return out;
  }

  Prediction predict(const FeatureVector& features) const { return predict_from_scores(score(features)); }

  Prediction predict_text(std::string_view utterance) const {
    return predict(extract_features(utterance, ngrams()));
  }

 private:
  ClassifierModel() = default;

  std::vector<JointLabel> labels_;
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::vector<double>> weights_;
  std::vector<double> bias_;
  Metadata meta_;
};

/// One-vs-rest hinge-loss training with L2 regularization, by stochastic
/// subgradient descent. Each label's scorer gets its own shuffle stream
/// derived from `params.seed`, so the result is a pure function of the inputs.
inline ClassifierModel train(const Corpus& corpus, const TrainParams& params) {
  if (corpus.empty()) throw Error("empty training set");
  if (params.epochs < 1) throw Error("epochs must be >= 1");
  if (!(params.reg > 0.0) || !(params.learning_rate > 0.0) || params.reg * params.learning_rate >= 1.0)
    throw Error("reg and learning_rate must be positive with reg * learning_rate < 1");

  std::set<JointLabel> label_set;
  for (const auto& ex : corpus) {
    if (!ex.n_best.empty()) throw Error("training example " + ex.id + " has an unexpanded n-best list");
    if (!ex.label.valid()) throw Error("training example " + ex.id + " has an incomplete label");
    label_set.insert(ex.label);
  }
  std::vector<JointLabel> labels(label_set.begin(), label_set.end());

  // Vocabulary indices follow first occurrence in the corpus.
  std::vector<std::string> vocab;
  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows;
  std::vector<std::size_t> targets;
  rows.reserve(corpus.size());
  for (const auto& ex : corpus) {
    auto fv = extract_features(ex.text, params.ngrams);
    std::vector<std::pair<std::uint32_t, double>> row;
    row.reserve(fv.size());
    for (auto& [key, count] : fv.entries()) {
      auto [it, inserted] = index.try_emplace(key, static_cast<std::uint32_t>(vocab.size()));
      if (inserted) vocab.push_back(key);
      row.emplace_back(it->second, static_cast<double>(count));
    }
    rows.push_back(std::move(row));
    targets.push_back(static_cast<std::size_t>(
        std::lower_bound(labels.begin(), labels.end(), ex.label) - labels.begin()));
  }

  const double lr0 = params.learning_rate;
  const double reg = params.reg;
  std::vector<std::vector<double>> weights(labels.size());
  std::vector<double> bias(labels.size(), 0.0);

  for (std::size_t k = 0; k < labels.size(); ++k) {
    Rng rng(mix_seed(params.seed, k));
    std::vector<double> v(vocab.size(), 0.0);
    double scale = 1.0;  // w = scale * v
    double b = 0.0;
    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::uint64_t t = 0;
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
      rng.shuffle(order);
      for (std::size_t i : order) {
        const double eta = lr0 / (1.0 + lr0 * reg * static_cast<double>(t++));
        const double y = targets[i] == k ? 1.0 : -1.0;
        double dot = 0.0;
        for (const auto& [idx, value] : rows[i]) dot += v[idx] * value;
        const double margin = y * (scale * dot + b);
        scale *= 1.0 - eta * reg;
        if (margin < 1.0) {
          const double step = eta * y / scale;
          for (const auto& [idx, value] : rows[i]) v[idx] += step * value;
          b += eta * y;
        }
        if (scale < 1e-9) {
          for (double& x : v) x *= scale;
          scale = 1.0;
        }
      }
    }
    for (double& x : v) x *= scale;
    weights[k] = std::move(v);
    bias[k] = b;
  }

  return ClassifierModel::from_parts(std::move(labels), std::move(vocab), std::move(weights), std::move(bias),
                                     {params, corpus.size()});
}

}  // namespace lingate
