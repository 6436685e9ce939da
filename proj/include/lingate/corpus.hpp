#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lingate/nlu/joint_label.hpp"

namespace lingate {

/// One training or evaluation record. `n_best` holds ranked ASR hypotheses
/// when the record comes from recognized audio; `text` is the transcript.
struct LabeledExample {
  std::string id;
  std::string language;
  std::string text;
  std::vector<std::string> n_best;
  JointLabel label;

  bool operator==(const LabeledExample&) const = default;
};

using Corpus = std::vector<LabeledExample>;

inline nlohmann::json to_json(const LabeledExample& ex) {
  nlohmann::json j = {{"id", ex.id},           {"language", ex.language}, {"text", ex.text},
                      {"tn", ex.label.tn},     {"sv", ex.label.sv},       {"en", ex.label.en}};
  if (!ex.n_best.empty()) j["n_best"] = ex.n_best;
  return j;
}

inline LabeledExample example_from_json(const nlohmann::json& j) {
  LabeledExample ex;
  ex.id = j.at("id").get<std::string>();
  ex.language = j.value("language", std::string{});
  ex.text = j.value("text", std::string{});
  if (j.contains("n_best")) ex.n_best = j.at("n_best").get<std::vector<std::string>>();
  ex.label = {j.at("tn").get<std::string>(), j.at("sv").get<std::string>(),
              j.at("en").get<std::string>()};
  return ex;
}

// JSON Lines: one record per line, fields {id, language, text, n_best?, tn, sv, en}.
inline Corpus parse_corpus(std::istream& in, const std::string& name = "<stream>") {
  Corpus out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    try {
      out.push_back(example_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(name + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

inline Corpus load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read corpus " + path);
  return parse_corpus(in, path);
}

inline void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& ex : corpus) out << to_json(ex).dump() << '\n';
}

inline void save_corpus(const std::string& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write corpus " + path);
  write_corpus(out, corpus);
}

inline LabelCatalog catalog_of(const Corpus& corpus, std::string source = "<corpus>") {
  LabelCatalog c = LabelCatalog::from_labels(std::vector<JointLabel>{}, std::move(source));
  for (const auto& ex : corpus) c.add(ex.label);
  return c;
}

}  // namespace lingate
