#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "lingate/nlu/classifier.hpp"

namespace lingate {

inline constexpr std::string_view kModelFormat = "lingate-linear-ovr";
inline constexpr int kModelFormatVersion = 1;

// Self-describing JSON. Doubles are written in shortest round-trip form, so a
// reloaded model scores bit-identically.
inline nlohmann::json model_to_json(const ClassifierModel& m) {
  nlohmann::json labels = nlohmann::json::array();
  for (const auto& l : m.labels()) labels.push_back({l.tn, l.sv, l.en});
  nlohmann::json weights = nlohmann::json::array();
  nlohmann::json bias = nlohmann::json::array();
  for (std::size_t k = 0; k < m.labels().size(); ++k) {
    auto w = m.weights(k);
    weights.push_back(std::vector<double>(w.begin(), w.end()));
    bias.push_back(m.bias(k));
  }
  const auto& p = m.metadata().params;
  return {
      {"format", kModelFormat},
      {"version", kModelFormatVersion},
      {"training",
       {{"ngram_min", p.ngrams.min},
        {"ngram_max", p.ngrams.max},
        {"epochs", p.epochs},
        {"reg", p.reg},
        {"learning_rate", p.learning_rate},
        {"seed", p.seed},
        {"examples", m.metadata().training_examples}}},
      {"labels", labels},
      {"vocabulary", m.vocabulary()},
      {"bias", bias},
      {"weights", weights},
  };
}

inline ClassifierModel model_from_json(const nlohmann::json& j) {
  if (j.value("format", std::string{}) != kModelFormat) throw Error("not a lingate model file");
  if (j.value("version", 0) != kModelFormatVersion)
    throw Error("unsupported model version " + std::to_string(j.value("version", 0)));
  const auto& t = j.at("training");
  ClassifierModel::Metadata meta;
  meta.params.ngrams = {t.at("ngram_min").get<int>(), t.at("ngram_max").get<int>()};
  meta.params.epochs = t.at("epochs").get<int>();
  meta.params.reg = t.at("reg").get<double>();
  meta.params.learning_rate = t.at("learning_rate").get<double>();
  meta.params.seed = t.at("seed").get<std::uint64_t>();
  meta.training_examples = t.at("examples").get<std::size_t>();
  std::vector<JointLabel> labels;
  for (const auto& l : j.at("labels")) labels.push_back({l.at(0), l.at(1), l.at(2)});
  return ClassifierModel::from_parts(std::move(labels), j.at("vocabulary").get<std::vector<std::string>>(),
                                     j.at("weights").get<std::vector<std::vector<double>>>(),
                                     j.at("bias").get<std::vector<double>>(), meta);
}

inline void save_model(const std::string& path, const ClassifierModel& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write model " + path);
  out << model_to_json(m).dump() << '\n';
}

inline ClassifierModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read model " + path);
  try {
    return model_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

}  // namespace lingate
