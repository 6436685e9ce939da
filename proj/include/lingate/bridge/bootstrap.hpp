#pragma once

#include <string>
#include <vector>

#include "lingate/bridge/adapters.hpp"
#include "lingate/calibration/data_prep.hpp"
#include "lingate/nlu/classifier.hpp"

namespace lingate::bridge {

struct TranslatedCorpus {
  Corpus examples;
  std::vector<std::string> failed_ids;
};

/// Translates the transcript and every n-best hypothesis of each example,
/// keeping labels. Examples whose translation fails are reported and dropped.
inline TranslatedCorpus translate_corpus(const Corpus& source, const MtAdapter& translator, std::string_view src,
                                         std::string_view tgt) {
  TranslatedCorpus out;
  for (const auto& ex : source) {
    try {
      LabeledExample t = ex;
      t.language = std::string(tgt);
      t.text = ex.text.empty() ? std::string{} : translator.translate(ex.text, src, tgt).translation;
      for (auto& h : t.n_best) h = translator.translate(h, src, tgt).translation;
      out.examples.push_back(std::move(t));
    } catch (const AdapterError&) {
      out.failed_ids.push_back(ex.id);
    }
  }
  return out;
}

struct BootstrapResult {
  ClassifierModel model;
  TranslatedCorpus translated;
};

/// Offline bootstrap: translate the source-language training corpus into the
/// target language and train on it with the native model's parameters.
inline BootstrapResult bootstrap_offline(const Corpus& source, const MtAdapter& translator, std::string_view src,
                                         std::string_view tgt, const TrainParams& params) {
  if (source.empty()) throw Error("empty training set");
  auto translated = translate_corpus(source, translator, src, tgt);
  auto expanded = calibration::expand_nbest(translated.examples);
  auto model = train(expanded.examples, params);
  return {std::move(model), std::move(translated)};
}

}  // namespace lingate::bridge
