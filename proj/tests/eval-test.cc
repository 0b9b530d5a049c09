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

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "medlink/base/error.h"
#include "medlink/eval/metrics.h"
#include "medlink/eval/report.h"
#include "test-util.h"

namespace medlink {
namespace {

using testing::MakeDocument;
using testing::MakeMention;

Prediction Pred(int start, int end, const std::string &entity,
                const std::string &type = "T1", const std::string &doc = "d",
                NameType name_type = NameType::kPrimaryName) {
  Prediction p;
  p.doc_id = doc;
  p.start = start;
  p.end = end;
  p.entity_id = entity;
  p.type_id = type;
  p.name_type = name_type;
  return p;
}

std::vector<Document> Gold() {
  Document d = MakeDocument("d", "Heart attack and renal mass seen in the kidney today.");
  d.mentions = {MakeMention(0, 0, 2, "C1"), MakeMention(0, 4, 5, "C2")};
  return {d};
}

TEST(PrfTest, FromCounts) {
  PrfReport r = PrfReport::FromCounts(1, 2, 1);
  EXPECT_DOUBLE_EQ(r.precision, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.recall, 0.5);
  EXPECT_DOUBLE_EQ(r.f1, 0.4);
  PrfReport empty = PrfReport::FromCounts(0, 0, 3);
  EXPECT_TRUE(empty.precision_undefined);
  EXPECT_FALSE(empty.recall_undefined);
  EXPECT_EQ(empty.f1, 0.0);
  EXPECT_TRUE(empty.ToJson()["precision_undefined"].get<bool>());
  PrfReport none = PrfReport::FromCounts(0, 0, 0);
  EXPECT_TRUE(none.precision_undefined);
  EXPECT_TRUE(none.recall_undefined);
}

TEST(MetricsTest, MentionLevelFixture) {
  std::vector<Prediction> preds = {Pred(0, 2, "C1"), Pred(4, 5, "C3"),
                                   Pred(6, 7, "C2")};
  PrfReport r = MentionLevelPrf(Gold(), preds);
  EXPECT_EQ(r.tp, 1);
  EXPECT_EQ(r.fp, 2);
  EXPECT_EQ(r.fn, 1);
  EXPECT_DOUBLE_EQ(r.f1, 0.4);
}

TEST(MetricsTest, MentionLevelIgnoresDuplicates) {
  std::vector<Prediction> preds = {Pred(0, 2, "C1"), Pred(0, 2, "C1")};
  PrfReport r = MentionLevelPrf(Gold(), preds);
  EXPECT_EQ(r.tp, 1);
  EXPECT_EQ(r.fp, 0);
  EXPECT_EQ(r.duplicates, 1);
}

TEST(MetricsTest, EmptyPredictions) {
  PrfReport r = MentionLevelPrf(Gold(), {});
  EXPECT_TRUE(r.precision_undefined);
  EXPECT_EQ(r.recall, 0.0);
  EXPECT_EQ(r.fn, 2);
}

TEST(MetricsTest, DocumentLevelSetSemantics) {
  EntitySets gold = {{"d", {"A", "B"}}};
  EntitySets pred = {{"d", {"A", "C"}}};
  PrfReport r = DocumentLevelPrf(gold, pred);
  EXPECT_DOUBLE_EQ(r.precision, 0.5);
  EXPECT_DOUBLE_EQ(r.recall, 0.5);
  EXPECT_DOUBLE_EQ(r.f1, 0.5);
  // Repeated mentions of one entity count once.
  std::vector<Prediction> preds = {Pred(0, 2, "C1"), Pred(6, 7, "C1"),
                                   Pred(8, 9, "C1")};
  r = DocumentLevelPrf(Gold(), preds);
  EXPECT_EQ(r.tp, 1);
  EXPECT_EQ(r.fp, 0);
  EXPECT_EQ(r.fn, 1);
}

TEST(MetricsTest, DocumentLevelUsesRawEntities) {
  auto gold = Gold();
  gold[0].raw_entities = {"C9"};
  PrfReport r = DocumentLevelPrf(gold, {Pred(1, 2, "C9")});
  EXPECT_EQ(r.tp, 1);
  EXPECT_EQ(r.fn, 2);
}

TEST(MetricsTest, DocumentsMissingFromOneSide) {
  EntitySets gold = {{"a", {"X"}}};
  EntitySets pred = {{"b", {"X"}}};
  PrfReport r = DocumentLevelPrf(gold, pred);
  EXPECT_EQ(r.tp, 0);
  EXPECT_EQ(r.fp, 1);
  EXPECT_EQ(r.fn, 1);
}

TEST(MetricsTest, NerIgnoresEntity) {
  std::vector<Prediction> preds = {Pred(0, 2, "C5", "T1"),
                                   Pred(4, 5, "C2", "T9")};
  PrfReport r = NerPrf(Gold(), preds);
  EXPECT_EQ(r.tp, 1);
  EXPECT_EQ(r.fp, 1);
  EXPECT_EQ(r.fn, 1);
}

SpanCandidates List(std::vector<std::string> entities) {
  SpanCandidates s;
  for (auto &e : entities) {
    LexicalMatch m;
    m.entity_id = e;
    s.matches.push_back(m);
  }
  return s;
}

TEST(MetricsTest, RecallAtKExamples) {
  std::vector<SpanCandidates> lists = {List({"A", "B", "C"}), List({"B", "A"}),
                                       List({"X", "Y", "Z", "A"}), List({})};
  auto r = RecallAtK(lists, {"A", "A", "A", "A"}, {1, 2, 4, 10});
  ASSERT_EQ(r.size(), 4u);
  EXPECT_DOUBLE_EQ(r[0].second, 0.25);
  EXPECT_DOUBLE_EQ(r[1].second, 0.5);
  EXPECT_DOUBLE_EQ(r[2].second, 0.75);
  EXPECT_DOUBLE_EQ(r[3].second, 0.75);
  EXPECT_EQ(RecallAtKCsv(r).substr(0, 1), "k");
}

TEST(MetricsTest, RecallAtKMonotone) {
  std::mt19937_64 rng(5);
  std::vector<SpanCandidates> lists;
  std::vector<std::string> gold;
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> ids;
    int n = static_cast<int>(rng() % 12);
    for (int j = 0; j < n; ++j) ids.push_back("E" + std::to_string(rng() % 15));
    lists.push_back(List(ids));
    gold.push_back("E" + std::to_string(rng() % 15));
  }
  auto r = RecallAtK(lists, gold, {1, 2, 3, 5, 8, 13, 50});
  for (size_t i = 1; i < r.size(); ++i) EXPECT_GE(r[i].second, r[i - 1].second);
  for (const auto &[k, v] : r) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(MetricsTest, StageRecall) {
  std::set<MentionKey> gold = {{"d", 0, 0, 2, "C1"}, {"d", 0, 4, 5, "C2"}};
  std::set<MentionKey> in = {{"d", 0, 0, 2, "C1"}, {"d", 0, 1, 2, "C3"}};
  std::set<MentionKey> out = {{"d", 0, 0, 2, "C1"}};
  EXPECT_DOUBLE_EQ(*StageRecall(gold, in, out), 1.0);
  EXPECT_FALSE(StageRecall(gold, {{"d", 0, 1, 2, "C3"}}, out).has_value());
}

TEST(MetricsTest, SeenUnseen) {
  auto gold = Gold();
  std::vector<Prediction> preds = {Pred(0, 2, "C1"), Pred(4, 5, "C2"),
                                   Pred(6, 7, "C3")};
  std::set<std::string> seen = {"C1"};
  SubsetReport s = SeenSubsetPrf(gold, preds, seen, true);
  EXPECT_EQ(s.mention.tp, 1);
  EXPECT_EQ(s.mention.fp, 0);
  EXPECT_EQ(s.mention.fn, 0);
  SubsetReport u = SeenSubsetPrf(gold, preds, seen, false);
  EXPECT_EQ(u.mention.tp, 1);
  EXPECT_EQ(u.mention.fp, 1);
  EXPECT_EQ(u.mention.fn, 0);
  EXPECT_EQ(u.document.tp, 1);
  EXPECT_EQ(u.document.fp, 1);
  EXPECT_EQ(SeenEntities(gold), (std::set<std::string>{"C1", "C2"}));
}

TEST(MetricsTest, AcronymSubset) {
  std::vector<Prediction> preds = {
      Pred(0, 2, "C1", "T1", "d", NameType::kAcronym),
      Pred(4, 5, "C7", "T1", "d", NameType::kAcronym),
      Pred(6, 7, "C2", "T1", "d", NameType::kAcronym),
      Pred(4, 5, "C2", "T1", "d", NameType::kSynonym)};
  PrfReport r = AcronymPrf(Gold(), preds);
  EXPECT_EQ(r.tp, 1);
  EXPECT_EQ(r.fp, 2);
  EXPECT_EQ(r.fn, 1);
}

TEST(MetricsTest, ErrorBreakdownCategories) {
  auto gold = Gold();
  gold[0].mentions[1].type_id = "T2";
  std::vector<Prediction> preds = {
      Pred(0, 2, "C1"),        // correct
      Pred(0, 2, "C5", "T1"),  // correct span and type
      Pred(4, 5, "C5", "T1"),  // correct span, wrong type
      Pred(1, 3, "C1"),        // overlapping the true span
      Pred(3, 6, "C2"),        // containing the true span
      Pred(8, 9, "C8")};       // unrelated
  ErrorBreakdown b = BreakdownFalsePositives(gold, preds);
  EXPECT_EQ(b.false_positives, 5);
  EXPECT_EQ(b.correct_span_bad_entity, 2);
  EXPECT_EQ(b.correct_span_and_type, 1);
  EXPECT_EQ(b.correct_entity_overlapping, 2);
  EXPECT_EQ(b.correct_entity_contained, 1);
  EXPECT_DOUBLE_EQ(b.Fraction(b.correct_span_bad_entity), 0.4);
  EXPECT_LE(b.correct_span_and_type, b.correct_span_bad_entity);
  EXPECT_LE(b.correct_entity_contained, b.correct_entity_overlapping);
}

TEST(MetricsTest, RawLowerBoundAddsDropped) {
  auto gold = Gold();
  gold[0].dropped_mentions = 3;
  PrfReport r = RawCorpusLowerBound(gold, {Pred(0, 2, "C1")});
  EXPECT_EQ(r.tp, 1);
  EXPECT_EQ(r.fn, 1 + 3);
  PrfReport m = MentionLevelPrf(gold, {Pred(0, 2, "C1")});
  EXPECT_LE(r.recall, m.recall);
}

TEST(ReportTest, EvaluateSections) {
  auto gold = Gold();
  gold[0].dropped_mentions = 1;
  std::vector<Prediction> preds = {Pred(0, 2, "C1", "T1", "d", NameType::kAcronym),
                                   Pred(4, 5, "C3")};
  EvaluationOptions options;
  EvaluationReport plain = Evaluate(gold, preds, options);
  json j = plain.ToJson();
  for (const char *key : {"mention", "document", "ner", "raw_lower_bound"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_FALSE(j.contains("errors"));
  EXPECT_FALSE(j.contains("seen"));
  EXPECT_EQ(j["dropped_mentions"], 1);

  options.breakdowns = true;
  options.seen_entities = std::set<std::string>{"C1"};
  EvaluationReport full = Evaluate(gold, preds, options);
  j = full.ToJson();
  for (const char *key : {"seen", "unseen", "acronym", "errors"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["errors"]["false_positives"], 1);
  std::string table = full.ToTable();
  EXPECT_NE(table.find("Mention"), std::string::npos);
  EXPECT_NE(table.find("Unseen (m)"), std::string::npos);
  EXPECT_NE(table.find("Correct span, bad entity"), std::string::npos);
}

TEST(ReportTest, FormatTableAligns) {
  std::string t = FormatTable({"a", "bbb"}, {{"xxxx", "y"}});
  std::istringstream in(t);
  std::string first, line;
  std::getline(in, first);
  size_t width = first.size();
  while (std::getline(in, line)) {
    if (!line.empty()) EXPECT_EQ(line.size(), width);
  }
  EXPECT_EQ(FormatRatio(0.12345), "0.123");
}

}  // namespace
}  // namespace medlink
