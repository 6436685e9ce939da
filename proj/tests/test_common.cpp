#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "lingate/common.hpp"
#include "lingate/corpus.hpp"
#include "lingate/nlu/joint_label.hpp"

using namespace lingate;

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    if (x != c.uniform()) differs = true;
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, BelowStaysInRangeAndCoversIt) {
  Rng r(3);
  std::set<std::size_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = r.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(Rng, ShuffleIsAPermutation) {
  Rng r(9);
  std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  auto w = v;
  r.shuffle(w);
  EXPECT_NE(v, w);
  std::sort(w.begin(), w.end());
  EXPECT_EQ(v, w);
}

TEST(Hashing, Fnv1aKnownValues) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_NE(mix_seed(1, 2), mix_seed(2, 1));
}

TEST(Text, LowerCoversSpanishLetters) {
  EXPECT_EQ(text::to_lower("DIRECCIÓN Ñandú ÁÉÍÚÜ"), "dirección ñandú áéíúü");
  EXPECT_EQ(text::to_lower("×"), "×");
}

TEST(Text, SplitAndJoin) {
  EXPECT_EQ(text::split_ws("  a\tb \n c  "), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(text::split_ws("   ").empty());
  EXPECT_EQ(text::join({"a", "b"}), "a b");
  EXPECT_EQ(text::trim("  x y \t"), "x y");
}

TEST(JointLabel, OrdersLexicographically) {
  const JointLabel a{"a", "z", "z"}, b{"b", "a", "a"}, c{"b", "a", "b"};
  EXPECT_LT(a, b);
  EXPECT_LT(b, c);
  EXPECT_EQ(c.str(), "b|a|b");
  EXPECT_FALSE((JointLabel{"", "a", "b"}).valid());
}

TEST(LabelCatalog, ParsesTsvWithComments) {
  auto cat = LabelCatalog::parse_tsv("# tn sv en\nBILL\tPAY\tNONE\n\nACCOUNT\tBALANCE\tCHECKING\n", "cat.tsv");
  EXPECT_EQ(cat.size(), 2u);
  EXPECT_TRUE(cat.contains({"BILL", "PAY", "NONE"}));
  EXPECT_FALSE(cat.contains({"BILL", "PAY", "X"}));
  EXPECT_EQ(cat.source(), "cat.tsv");
  EXPECT_THROW(LabelCatalog::parse_tsv("A\tB\n", "bad"), Error);
  auto again = LabelCatalog::parse_tsv(cat.to_tsv(), "again");
  EXPECT_EQ(again.joint_set(), cat.joint_set());
}

TEST(Corpus, JsonlRoundTrip) {
  Corpus c{{"u1", "es", "quiero pagar", {}, {"BILL", "PAY", "NONE"}},
           {"u2", "es", "mi saldo", {"mi saldo", "mi sal do"}, {"ACCOUNT", "BALANCE", "NONE"}}};
  std::ostringstream out;
  write_corpus(out, c);
  std::istringstream in(out.str());
  EXPECT_EQ(parse_corpus(in), c);
}

TEST(Corpus, MalformedLineReportsLineNumber) {
  std::istringstream in("{\"id\":\"a\",\"text\":\"x\",\"tn\":\"t\",\"sv\":\"s\",\"en\":\"e\"}\n{not json}\n");
  try {
    parse_corpus(in, "c.jsonl");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("c.jsonl:2"), std::string::npos) << e.what();
  }
}
