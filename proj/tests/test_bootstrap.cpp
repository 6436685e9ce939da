#include <gtest/gtest.h>

#include <set>

#include "lingate/bridge/bootstrap.hpp"
#include "lingate/bridge/mt.hpp"
#include "support.hpp"

using namespace lingate;
using namespace lingate::bridge;

namespace {
// Fails on any text containing "boom".
class FlakyMt final : public MtAdapter {
 public:
  MtResult translate(std::string_view t, std::string_view, std::string_view) const override {
    if (t.find("boom") != std::string_view::npos) throw AdapterError("boom");
    return {std::string(t), 1.0};
  }
  std::string describe() const override { return "flaky"; }
};
}  // namespace

TEST(Bootstrap, IdentityTranslatorMatchesNativeTraining) {
  const auto corpus = lingate::testing::separable_corpus(200, 8, 12);
  TrainParams params;
  params.epochs = 5;
  const auto native = train(corpus, params);
  const auto boot = bootstrap_offline(corpus, IdentityTranslator{}, "en", "en", params);
  EXPECT_TRUE(boot.translated.failed_ids.empty());
  for (const auto& ex : lingate::testing::separable_corpus(100, 8, 13)) {
    const auto a = native.predict_text(ex.text), b = boot.model.predict_text(ex.text);
    EXPECT_EQ(a.best, b.best);
    EXPECT_EQ(a.scores, b.scores);
  }
}

TEST(Bootstrap, LexiconBijectionIsEquivariant) {
  const auto corpus = lingate::testing::separable_corpus(200, 6, 4);
  TranslationLexicon lex;
  std::set<std::string> vocab;
  for (const auto& ex : corpus)
    for (const auto& w : text::split_ws(ex.text)) vocab.insert(w);
  for (const auto& w : vocab) lex.add(w, "t_" + w);
  LexiconTranslator mt(lex, "en", "xx");
  TrainParams params;
  params.epochs = 4;
  const auto native = train(corpus, params);
  const auto boot = bootstrap_offline(corpus, mt, "en", "xx", params);
  for (const auto& ex : corpus) {
    const auto mapped = mt.translate(ex.text, "en", "xx").translation;
    EXPECT_EQ(native.predict_text(ex.text).scores, boot.model.predict_text(mapped).scores);
  }
}

TEST(Bootstrap, TranslatesNbestAndKeepsLabels) {
  TranslationLexicon lex;
  lex.add("pagar", "pay");
  lex.add("factura", "bill");
  LexiconTranslator mt(lex, "es", "en");
  Corpus c{{"u", "es", "pagar factura", {"pagar factura", "pagar"}, lingate::testing::L("BILL")}};
  const auto t = translate_corpus(c, mt, "es", "en");
  ASSERT_EQ(t.examples.size(), 1u);
  EXPECT_EQ(t.examples[0].text, "pay bill");
  EXPECT_EQ(t.examples[0].n_best, (std::vector<std::string>{"pay bill", "pay"}));
  EXPECT_EQ(t.examples[0].language, "en");
  EXPECT_EQ(t.examples[0].label, c[0].label);
}

TEST(Bootstrap, ReportsFailuresAndRejectsEmpty) {
  Corpus c = lingate::testing::separable_corpus(20, 2, 1);
  c[3].text = "boom boom";
  TrainParams params;
  params.epochs = 1;
  const auto r = bootstrap_offline(c, FlakyMt{}, "en", "en", params);
  EXPECT_EQ(r.translated.failed_ids, (std::vector<std::string>{c[3].id}));
  EXPECT_EQ(r.model.metadata().training_examples, 19u);
  EXPECT_THROW(bootstrap_offline({}, IdentityTranslator{}, "en", "en", params), Error);
}
