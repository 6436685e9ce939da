#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lingate/bridge/adapters.hpp"
#include "lingate/calibration/threshold.hpp"
#include "lingate/common.hpp"

namespace lingate::bridge {

/// Word-level translation table. A source token may map to several weighted
/// targets (ambiguity); a target may be a multi-word phrase.
class TranslationLexicon {
 public:
  struct Entry {
    std::string target;
    double weight = 1.0;
    bool operator==(const Entry&) const = default;
  };

  void add(std::string source, std::string target, double weight = 1.0) {
    if (!(weight > 0.0)) throw Error("lexicon weight for '" + source + "' must be positive");
    if (source.empty() || target.empty()) throw Error("lexicon entries need a source and a target");
    entries_[text::to_lower(source)].push_back({std::move(target), weight});
  }

  const std::vector<Entry>* lookup(std::string_view lowered) const {
    auto it = entries_.find(std::string(lowered));
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, std::vector<Entry>>& entries() const { return entries_; }

  // `source<TAB>target<TAB>weight` per line; '#' starts a comment line.
  static TranslationLexicon parse_tsv(std::string_view body, const std::string& name = "<lexicon>") {
    TranslationLexicon lex;
    std::istringstream in{std::string(body)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      const auto t1 = line.find('\t');
      const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
      if (t2 == std::string::npos) throw Error(name + ":" + std::to_string(lineno) + ": expected source\\ttarget\\tweight");
      try {
        lex.add(line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1),
                calibration::parse_double(text::trim(line.substr(t2 + 1))));
      } catch (const Error& e) {
        throw Error(name + ":" + std::to_string(lineno) + ": " + e.what());
      }
    }
    return lex;
  }

  static TranslationLexicon load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read lexicon " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_tsv(ss.str(), path);
  }

  std::string to_tsv() const {
    std::string out;
    for (const auto& [src, targets] : entries_)
      for (const auto& e : targets) out += src + "\t" + e.target + "\t" + calibration::format_double(e.weight) + "\n";
    return out;
  }

 private:
  std::map<std::string, std::vector<Entry>> entries_;
};

/// Lexicon-driven translator for one language pair. Ambiguous entries are
/// sampled by weight from a stream seeded by (seed, text, position); a found
/// word is duplicated with probability `p_duplicate`. Unknown words pass
/// through. Confidence is the fraction of words found in the lexicon.
class LexiconTranslator final : public MtAdapter {
 public:
  LexiconTranslator(TranslationLexicon lexicon, std::string src, std::string tgt, std::uint64_t seed = 1,
                    double p_duplicate = 0.0)
      : lexicon_(std::move(lexicon)), src_(std::move(src)), tgt_(std::move(tgt)), seed_(seed), p_dup_(p_duplicate) {
    if (!(p_dup_ >= 0.0 && p_dup_ <= 1.0)) throw Error("p_duplicate must lie in [0, 1]");
  }

  MtResult translate(std::string_view input, std::string_view src, std::string_view tgt) const override {
    if (src != src_ || tgt != tgt_)
      throw AdapterError("unsupported language pair " + std::string(src) + "->" + std::string(tgt) +
                         " (translator serves " + src_ + "->" + tgt_ + ")");
    Rng rng(mix_seed(seed_, fnv1a(input)));
    std::vector<std::string> out;
    std::size_t words = 0, found = 0;
    for (const auto& token : text::split_ws(input)) {
      // token = prefix punctuation + core + suffix punctuation
      std::size_t b = 0;
      while (b < token.size()) {
        const auto n = text::punct_len(token, b);
        if (!n) break;
        b += n;
      }
      std::size_t e = b, core_end = b;
      while (e < token.size()) {
        const auto n = text::punct_len(token, e);
        e += n ? n : 1;
        if (!n) core_end = e;
      }
      if (core_end == b) {
        out.push_back(token);
        continue;
      }
      ++words;
      const std::string core = token.substr(b, core_end - b);
      const auto* targets = lexicon_.lookup(text::to_lower(core));
      const double u_choice = rng.uniform();
      const double u_dup = rng.uniform();
      if (!targets) {
        out.push_back(token);
        continue;
      }
      ++found;
      std::string target = choose(*targets, u_choice);
      if (text::is_alpha_at(core, 0) && core != text::to_lower(core)) text::capitalize_at(target, 0);
      std::string rendered = token.substr(0, b) + target + token.substr(core_end);
      if (u_dup < p_dup_) out.push_back(target);
      out.push_back(std::move(rendered));
    }
    return {text::join(out), words ? static_cast<double>(found) / static_cast<double>(words) : 0.0};
  }

  std::string describe() const override { return "lexicon-mt(" + src_ + "->" + tgt_ + ")"; }

  const TranslationLexicon& lexicon() const { return lexicon_; }

 private:
  static const std::string& choose(const std::vector<TranslationLexicon::Entry>& targets, double u) {
    double total = 0.0;
    for (const auto& t : targets) total += t.weight;
    double acc = 0.0;
    for (const auto& t : targets) {
      acc += t.weight;
      if (u * total < acc) return t.target;
    }
    return targets.back().target;
  }

  TranslationLexicon lexicon_;
  std::string src_, tgt_;
  std::uint64_t seed_;
  double p_dup_;
};

/// Returns its input unchanged for any language pair, with confidence 1.
class IdentityTranslator final : public MtAdapter {
 public:
  MtResult translate(std::string_view input, std::string_view, std::string_view) const override {
    return {std::string(input), 1.0};
  }
  std::string describe() const override { return "identity-mt"; }
};

}  // namespace lingate::bridge
