#pragma once

#include <atomic>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "lingate/bridge/adapters.hpp"
#include "lingate/common.hpp"
#include "lingate/corpus.hpp"
#include "lingate/nlu/classifier.hpp"

namespace lingate::testing {

inline JointLabel L(std::string tn, std::string sv = "sv", std::string en = "en") {
  return {std::move(tn), std::move(sv), std::move(en)};
}

// Echoes its input with a fixed confidence.
class StubAsr final : public bridge::AsrAdapter {
 public:
  explicit StubAsr(double confidence = 1.0, bool fail = false) : confidence_(confidence), fail_(fail) {}
  bridge::AsrResult recognize(std::string_view input) const override {
    if (fail_) throw bridge::AdapterError("stub asr failure");
    return {{{std::string(input), confidence_}}, confidence_, false};
  }
  std::string describe() const override { return "stub-asr"; }

 private:
  double confidence_;
  bool fail_;
};

// Returns its input verbatim with a fixed confidence; counts calls.
class StubMt final : public bridge::MtAdapter {
 public:
  explicit StubMt(double confidence = 1.0, bool fail = false) : confidence_(confidence), fail_(fail) {}
  bridge::MtResult translate(std::string_view text, std::string_view, std::string_view) const override {
    ++calls;
    if (fail_) throw bridge::AdapterError("stub mt failure");
    return {std::string(text), confidence_};
  }
  std::string describe() const override { return "stub-mt"; }
  mutable std::atomic<int> calls{0};

 private:
  double confidence_;
  bool fail_;
};

/// A model whose score for label k is `bias[k]` on every input.
inline std::shared_ptr<const ClassifierModel> constant_model(std::vector<JointLabel> labels,
                                                             std::vector<double> bias) {
  std::vector<std::vector<double>> w(labels.size());
  return std::make_shared<const ClassifierModel>(
      ClassifierModel::from_parts(std::move(labels), {}, std::move(w), std::move(bias), {}));
}

/// `labels` labels, each with a unique witness token, plus shared filler.
inline Corpus separable_corpus(std::size_t examples, std::size_t labels, std::uint64_t seed) {
  static const std::vector<std::string> filler{"please", "i", "want", "to", "the", "my", "now", "about", "a", "help"};
  Rng rng(seed);
  Corpus c;
  for (std::size_t i = 0; i < examples; ++i) {
    const std::size_t k = i % labels;
    std::vector<std::string> words;
    const std::size_t len = 2 + rng.below(5);
    for (std::size_t w = 0; w < len; ++w) words.push_back(rng.pick(filler));
    words.insert(words.begin() + static_cast<std::ptrdiff_t>(rng.below(words.size() + 1)), "witness" + std::to_string(k));
    LabeledExample ex;
    ex.id = "ex" + std::to_string(i);
    ex.language = "en";
    ex.text = text::join(words);
    ex.label = L("tn" + std::to_string(k % 3), "sv" + std::to_string(k), "en" + std::to_string(k % 2));
    c.push_back(std::move(ex));
  }
  return c;
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("lingate-test-" + std::to_string(std::random_device{}()) + "-" + std::to_string(counter()++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  static std::atomic<int>& counter() {
    static std::atomic<int> c{0};
    return c;
  }
  std::filesystem::path path_;
};

}  // namespace lingate::testing
