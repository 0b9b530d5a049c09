// Copyright 2026 The Medlink Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "medlink/base/error.h"
#include "medlink/candgen/candidates-io.h"
#include "medlink/candgen/lemmatizer.h"
#include "medlink/candgen/lexical-matcher.h"
#include "medlink/candgen/span-enumerator.h"
#include "medlink/candgen/stop-words.h"
#include "medlink/candgen/tfidf.h"
#include "test-util.h"

namespace medlink {
namespace {

using testing::Alias;
using testing::MakeDocument;

AliasTable ToyTable() {
  return AliasTable::FromEntries({Alias("heart", "C1"),
                                  Alias("heart attack", "C2"),
                                  Alias("lung", "C3")});
}

// Independent TF-IDF cosine over a list of documents: char 2-5-grams of the
// lowercased string and whitespace words.
class OracleTfidf {
 public:
  OracleTfidf(const std::vector<std::string> &docs, bool chars)
      : chars_(chars) {
    for (const std::string &d : docs) {
      std::set<std::string> seen;
      for (const auto &[f, c] : Counts(d)) seen.insert(f);
      for (const std::string &f : seen) ++df_[f];
    }
    n_ = static_cast<double>(docs.size());
  }

  double Cosine(const std::string &a, const std::string &b) const {
    auto va = Vector(a), vb = Vector(b);
    double dot = 0;
    for (const auto &[f, w] : va) {
      auto it = vb.find(f);
      if (it != vb.end()) dot += w * it->second;
    }
    return dot;
  }

 private:
  std::map<std::string, double> Counts(const std::string &raw) const {
    std::string s;
    for (char c : raw) s += static_cast<char>(std::tolower(c));
    std::map<std::string, double> counts;
    if (chars_) {
      for (size_t n = 2; n <= 5; ++n) {
        for (size_t i = 0; i + n <= s.size(); ++i) counts[s.substr(i, n)] += 1;
      }
    } else {
      std::istringstream in(s);
      std::string w;
      while (in >> w) counts[w] += 1;
    }
    return counts;
  }

  std::map<std::string, double> Vector(const std::string &s) const {
    std::map<std::string, double> v;
    double norm = 0;
    for (const auto &[f, c] : Counts(s)) {
      auto it = df_.find(f);
      if (it == df_.end()) continue;
      double w = c * (std::log((1 + n_) / (1 + it->second)) + 1);
      v[f] = w;
      norm += w * w;
    }
    for (auto &[f, w] : v) w /= std::sqrt(norm);
    return v;
  }

  bool chars_;
  double n_ = 0;
  std::map<std::string, double> df_;
};

TEST(StopListTest, CaseInsensitive) {
  StopList stop = StopList::Default();
  EXPECT_TRUE(stop.Contains("the"));
  EXPECT_TRUE(stop.Contains("The"));
  EXPECT_FALSE(stop.Contains("heart"));
  EXPECT_GE(stop.size(), 100u);
}

TEST(LemmatizerTest, SuffixRules) {
  Lemmatizer lem;
  EXPECT_EQ(lem.LemmatizeWord("Studies"), "study");
  EXPECT_EQ(lem.LemmatizeWord("classes"), "class");
  EXPECT_EQ(lem.LemmatizeWord("boxes"), "box");
  EXPECT_EQ(lem.LemmatizeWord("cells"), "cell");
  EXPECT_EQ(lem.LemmatizeWord("virus"), "virus");
  EXPECT_EQ(lem.LemmatizeWord("analysis"), "analysis");
  EXPECT_EQ(lem.LemmatizeWord("gas"), "gas");
  EXPECT_EQ(lem.LemmatizeWord("IL-2s"), "il-2s");
  EXPECT_EQ(Lemmatizer(false).LemmatizeWord("Cells"), "cells");
  EXPECT_EQ(lem.Normalize("Heart  Attacks"), "heart attack");
}

TEST(SpanEnumeratorTest, StopWordsAndPunctuationBound) {
  Document doc = MakeDocument("d", "the heart attack .");
  StopList stop({"the"});
  auto spans = EnumerateCandidateSpans(doc, 3, stop);
  std::set<std::string> texts;
  for (const auto &s : spans) texts.insert(s.text);
  EXPECT_EQ(texts,
            (std::set<std::string>{"heart", "attack", "heart attack"}));
}

TEST(SpanEnumeratorTest, StopWordSentenceIsEmpty) {
  Document doc = MakeDocument("d", "the");
  EXPECT_TRUE(EnumerateCandidateSpans(doc, 10, StopList({"the"})).empty());
}

TEST(SpanEnumeratorTest, LengthLimit) {
  Document doc = MakeDocument("d", "a b c d e f");
  auto spans = EnumerateCandidateSpans(doc, 2, StopList());
  EXPECT_EQ(spans.size(), 6u + 5u);
  for (const auto &s : spans) EXPECT_LE(s.length(), 2);
}

TEST(TfidfTest, VocabularyIsObservedNgrams) {
  std::vector<std::string> names = {"heart", "heart attack", "lung"};
  auto v = Vectorizers::Fit(names, VectorizerOptions());
  std::set<std::string> observed;
  for (const std::string &n : names) {
    for (size_t k = 2; k <= 5; ++k) {
      for (size_t i = 0; i + k <= n.size(); ++i) observed.insert(n.substr(i, k));
    }
  }
  for (const std::string &f : v.chars().vocabulary()) {
    EXPECT_TRUE(observed.count(f)) << f;
  }
  EXPECT_EQ(v.chars().num_features(), static_cast<int>(observed.size()));
  auto again = Vectorizers::Fit(names, VectorizerOptions());
  EXPECT_EQ(v.chars().vocabulary(), again.chars().vocabulary());
  EXPECT_EQ(v.words().vocabulary(), again.words().vocabulary());
  EXPECT_EQ(v.chars().idf(), again.chars().idf());
}

TEST(TfidfTest, FeatureCap) {
  VectorizerOptions options;
  options.max_char_features = 10;
  options.max_word_features = 2;
  auto v = Vectorizers::Fit({"heart", "heart attack", "lung"}, options);
  EXPECT_EQ(v.chars().num_features(), 10);
  EXPECT_EQ(v.words().num_features(), 2);
  EXPECT_LE(VectorizerOptions().max_char_features, 200000);
}

TEST(TfidfTest, VectorsAreUnitLength) {
  auto v = Vectorizers::Fit({"heart", "heart attack", "lung"},
                            VectorizerOptions());
  SparseVector x = v.CharVector("heart attack");
  EXPECT_NEAR(Dot(x, x), 1.0, 1e-12);
  EXPECT_TRUE(v.CharVector("zzzz").empty());
}

TEST(LexicalMatcherTest, IdentityAndDisjoint) {
  AliasTable table = ToyTable();
  LexicalMatcher m(&table, Vectorizers::Fit({"heart", "heart attack", "lung"},
                                            VectorizerOptions()));
  EXPECT_NEAR(m.Similarity("heart attack", "heart attack"), 1.0, 1e-12);
  EXPECT_NEAR(m.Similarity("lung", "lung"), 1.0, 1e-12);
  EXPECT_EQ(m.Similarity("lung", "heart"), 0.0);
  EXPECT_DOUBLE_EQ(m.Similarity("heart", "heart attack"),
                   m.Similarity("heart attack", "heart"));
}

TEST(LexicalMatcherTest, MisspellingMatchesOracle) {
  AliasTable table = ToyTable();
  std::vector<std::string> names = {"heart", "heart attack", "lung"};
  VectorizerOptions options;
  options.lemmatize = false;
  LexicalMatcher m(&table, Vectorizers::Fit(names, options));
  auto matches = m.Generate("hert attack", 50);
  ASSERT_FALSE(matches.empty());
  EXPECT_EQ(matches[0].alias, "heart attack");
  OracleTfidf chars(names, true), words(names, false);
  for (const LexicalMatch &match : matches) {
    double expected = (chars.Cosine("hert attack", match.alias) +
                       0.5 * words.Cosine("hert attack", match.alias)) /
                      1.5;
    EXPECT_NEAR(match.score, expected, 1e-12) << match.alias;
  }
  // "lung" shares no n-gram with the query.
  for (const LexicalMatch &match : matches) EXPECT_NE(match.entity_id, "C3");
}

TEST(LexicalMatcherTest, PrimaryEntryOutranksBetterSynonym) {
  std::vector<LexicalMatch> list(3);
  list[0].entity_id = "X";
  list[0].alias = "syn";
  list[0].name_type = NameType::kSynonym;
  list[0].score = 0.9;
  list[1].entity_id = "X";
  list[1].alias = "prim";
  list[1].name_type = NameType::kPrimaryName;
  list[1].score = 0.7;
  list[2].entity_id = "Y";
  list[2].alias = "other";
  list[2].name_type = NameType::kAcronym;
  list[2].score = 0.95;
  SortAndDeduplicate(&list, 50);
  ASSERT_EQ(list.size(), 2u);
  EXPECT_EQ(list[0].entity_id, "X");
  EXPECT_EQ(list[0].alias, "prim");
  EXPECT_EQ(list[1].entity_id, "Y");
}

TEST(LexicalMatcherTest, ToyTableDedupViaPrimary) {
  AliasTable table = AliasTable::FromEntries(
      {Alias("myocardial infarction", "X"),
       Alias("heart attack", "X", NameType::kSynonym),
       Alias("heart", "Y")});
  std::vector<std::string> names = {"myocardial infarction", "heart attack",
                                    "heart"};
  LexicalMatcher m(&table, Vectorizers::Fit(names, VectorizerOptions()));
  auto matches = m.Generate("heart attack infarction", 50);
  std::map<std::string, int> count;
  for (const auto &match : matches) ++count[match.entity_id];
  EXPECT_EQ(count["X"], 1);
  for (const auto &match : matches) {
    if (match.entity_id == "X") {
      EXPECT_EQ(match.name_type, NameType::kPrimaryName);
      EXPECT_LT(match.score, m.Similarity("heart attack infarction",
                                          "heart attack"));
    }
  }
}

TEST(LexicalMatcherTest, IndexEqualsBruteForce) {
  std::mt19937_64 rng(3);
  const char *syllables[] = {"ka", "lo", "mi", "nu", "pe", "ra", "so", "ti",
                             "ve", "zu", "ba", "de"};
  auto word = [&]() {
    std::string w;
    int n = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int i = 0; i < n; ++i) w += syllables[rng() % 12];
    return w;
  };
  std::vector<AliasEntry> entries;
  std::vector<std::string> names;
  for (int e = 0; e < 300; ++e) {
    std::string id = "E" + std::to_string(e);
    int aliases = 1 + e % 3;
    for (int a = 0; a < aliases; ++a) {
      std::string name = word() + " " + word();
      entries.push_back(Alias(name, id,
                              a == 0 ? NameType::kPrimaryName
                                     : static_cast<NameType>(2 + a % 2)));
      names.push_back(name);
    }
  }
  AliasTable table = AliasTable::FromEntries(entries);
  LexicalMatcher m(&table, Vectorizers::Fit(names, VectorizerOptions()));
  for (int q = 0; q < 100; ++q) {
    std::string query = word() + (q % 2 ? " " + word() : "");
    auto fast = m.Generate(query, 20);
    auto slow = m.GenerateBruteForce(query, 20);
    ASSERT_EQ(fast.size(), slow.size()) << query;
    std::set<std::string> ids;
    for (size_t i = 0; i < fast.size(); ++i) {
      EXPECT_EQ(fast[i].entity_id, slow[i].entity_id);
      EXPECT_NEAR(fast[i].score, slow[i].score, 1e-9);
      EXPECT_GT(fast[i].score, 0.0);
      ids.insert(fast[i].entity_id);
    }
    EXPECT_EQ(ids.size(), fast.size());
    EXPECT_LE(fast.size(), 20u);
  }
}

TEST(LexicalMatcherTest, SavedIndexAndVectorizersReload) {
  AliasTable table = ToyTable();
  LexicalMatcher m(&table, Vectorizers::Fit({"heart", "heart attack", "lung"},
                                            VectorizerOptions()));
  std::string dir = testing::ScratchDir("index");
  m.vectorizers().Save(dir + "/v.bin");
  m.SaveIndex(dir + "/i.bin");
  LexicalMatcher back = LexicalMatcher::LoadIndex(
      dir + "/i.bin", &table, Vectorizers::Load(dir + "/v.bin"));
  EXPECT_EQ(back.Generate("hert attack", 5), m.Generate("hert attack", 5));
  EXPECT_EQ(back.num_postings(), m.num_postings());
  AliasTable other = AliasTable::FromEntries({Alias("kidney", "C9")});
  EXPECT_THROW(LexicalMatcher::LoadIndex(dir + "/i.bin", &other,
                                         Vectorizers::Load(dir + "/v.bin")),
               Error);
}

TEST(CandidatesIoTest, RoundTrip) {
  AliasTable table = ToyTable();
  LexicalMatcher m(&table, Vectorizers::Fit({"heart", "heart attack", "lung"},
                                            VectorizerOptions()));
  Document doc = MakeDocument("d", "A heart attack in the lung.");
  auto spans = GenerateCandidates({doc}, m, StopList::Default(), 4, 2);
  ASSERT_FALSE(spans.empty());
  spans[0].matches[0].p = 0.25;
  std::string dir = testing::ScratchDir("cands");
  WriteSpanCandidates(dir + "/c.jsonl", spans);
  auto back = ReadSpanCandidates(dir + "/c.jsonl");
  ASSERT_EQ(back.size(), spans.size());
  for (size_t i = 0; i < spans.size(); ++i) {
    EXPECT_TRUE(back[i].span.SameSpan(spans[i].span));
    EXPECT_EQ(back[i].span.text, spans[i].span.text);
    EXPECT_EQ(back[i].matches, spans[i].matches);
  }
}

}  // namespace
}  // namespace medlink
