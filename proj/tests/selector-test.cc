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

#include <algorithm>
#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "medlink/base/error.h"
#include "medlink/nn/grad-check.h"
#include "medlink/selector/inference.h"
#include "medlink/selector/selector.h"
#include "test-util.h"

namespace medlink {
namespace {

using testing::Alias;
using testing::MakeDocument;
using testing::MakeMention;

constexpr double kInf = std::numeric_limits<double>::infinity();

Prediction Scored(int start, int end, double score,
                  const std::string &entity = "C1", int sentence = 0,
                  const std::string &doc = "d") {
  Prediction p;
  p.doc_id = doc;
  p.sentence = sentence;
  p.start = start;
  p.end = end;
  p.entity_id = entity;
  p.type_id = "T1";
  p.score = score;
  return p;
}

std::vector<std::pair<int, int>> Spans(const std::vector<Prediction> &preds) {
  std::vector<std::pair<int, int>> out;
  for (const auto &p : preds) out.emplace_back(p.start, p.end);
  return out;
}

TEST(SelectorLossTest, AnalyticCases) {
  EXPECT_EQ(SelectorLoss(1.0, true, 1.0, 5.0), 0.0);
  EXPECT_EQ(SelectorLoss(0.0, false, 1.0, 5.0), 1.0);
  EXPECT_EQ(SelectorLoss(-1.0, true, 1.0, 5.0), 10.0);
  EXPECT_EQ(SelectorLoss(-1.0, false, 1.0, 5.0), 0.0);
  EXPECT_EQ(SelectorLossGrad(2.0, true, 1.0, 5.0), 0.0);
  EXPECT_EQ(SelectorLossGrad(0.0, true, 1.0, 5.0), -5.0);
  EXPECT_EQ(SelectorLossGrad(0.0, false, 1.0, 5.0), 1.0);
  EXPECT_EQ(SelectorLossGrad(-3.0, false, 1.0, 5.0), 0.0);
}

TEST(SelectorLossTest, NonNegativeAndZeroOnlyPastMargin) {
  for (double s = -3; s <= 3; s += 0.25) {
    for (bool pos : {true, false}) {
      double l = SelectorLoss(s, pos, 1.0, 2.0);
      EXPECT_GE(l, 0.0);
      EXPECT_EQ(l == 0.0, pos ? s >= 1.0 : s <= -1.0);
    }
  }
}

TEST(InferenceTest, ThresholdExamples) {
  std::vector<Prediction> in = {Scored(0, 1, -0.5), Scored(1, 2, 0.1),
                                Scored(2, 3, 2.0)};
  EXPECT_EQ(InferThreshold(in, 0.0).size(), 2u);
  EXPECT_TRUE(InferThreshold(in, kInf).empty());
  EXPECT_EQ(InferThreshold(in, -kInf).size(), 3u);
}

TEST(InferenceTest, GreedyExamples) {
  auto out = InferGreedy(
      {Scored(0, 2, 0.5), Scored(1, 3, 0.9), Scored(4, 5, 0.3)}, 0.0);
  EXPECT_EQ(Spans(out), (std::vector<std::pair<int, int>>{{1, 3}, {4, 5}}));
  out = InferGreedy({Scored(0, 5, 1.0), Scored(1, 2, 2.0)}, 0.0);
  EXPECT_EQ(Spans(out), (std::vector<std::pair<int, int>>{{1, 2}}));
}

TEST(InferenceTest, GreedyOnDisjointEqualsThreshold) {
  std::vector<Prediction> in = {Scored(0, 1, 0.4), Scored(2, 4, 0.7),
                                Scored(1, 2, 0.2, "C1", 1)};
  auto greedy = InferGreedy(in, 0.0);
  auto thresh = InferThreshold(in, 0.0);
  std::sort(thresh.begin(), thresh.end(), PredictionPositionOrder);
  EXPECT_EQ(greedy, thresh);
}

TEST(InferenceTest, GreedyTieBreaks) {
  auto out = InferGreedy({Scored(0, 2, 1.0, "C2"), Scored(0, 2, 1.0, "C1")},
                         0.0);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].entity_id, "C1");
  out = InferGreedy({Scored(0, 1, 1.0), Scored(0, 3, 1.0)}, 0.0);
  EXPECT_EQ(Spans(out), (std::vector<std::pair<int, int>>{{0, 3}}));
}

TEST(InferenceTest, GreedyCanChangeWhenTauRises) {
  // A low-scoring early span anchors the sweep at tau 0; once it falls below
  // tau the sweep anchors elsewhere and keeps more spans.
  std::vector<Prediction> in = {Scored(0, 2, 0.1), Scored(1, 6, 0.9),
                                Scored(5, 7, 0.95), Scored(7, 8, 0.5),
                                Scored(2, 4, 0.6)};
  EXPECT_EQ(Spans(InferGreedy(in, 0.0)),
            (std::vector<std::pair<int, int>>{{1, 6}, {7, 8}}));
  EXPECT_EQ(Spans(InferGreedy(in, 0.3)),
            (std::vector<std::pair<int, int>>{{2, 4}, {5, 7}, {7, 8}}));
}

TEST(InferenceTest, PredictionsRoundTrip) {
  Document doc = MakeDocument("d", "Heart attack hurts.");
  Prediction p = Scored(0, 2, 1.25, "C7");
  p.p = 0.75;
  p.lexical_score = 0.5;
  p.name_type = NameType::kAcronym;
  json j = PredictionToJson(p, &doc);
  EXPECT_EQ(j["text"], "Heart attack");
  EXPECT_EQ(j["start"], 0);
  EXPECT_EQ(j["end"], 12);
  EXPECT_EQ(PredictionFromJson(j), p);
  std::string dir = testing::ScratchDir("preds");
  WritePredictionsJsonl(dir + "/p.jsonl", {p}, {doc});
  auto back = ReadPredictionsJsonl(dir + "/p.jsonl");
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0], p);
  WritePredictionsPubTator(dir + "/p.pubtator", {p}, {doc});
  EXPECT_NE(ReadFile(dir + "/p.pubtator").find("d\t0\t12\tHeart attack\tT1\tC7"),
            std::string::npos);
}

class SelectorFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    table_ = AliasTable::FromEntries(
        {Alias("heart attack", "C1"), Alias("stroke", "C2"),
         Alias("heart", "C3", NameType::kPrimaryName, "T023", "Body Part")});
    doc_ = MakeDocument("d", "A heart attack and a stroke.");
    doc_.mentions = {MakeMention(0, 1, 3, "C1", "T047"),
                     MakeMention(0, 5, 6, "C2", "T047")};
    VocabularyBuilder b;
    b.Add(doc_.text);
    for (const auto &e : table_.entries()) b.Add(table_.SelectorText(e));
    vocab_ = b.Build();
    docs_ = {doc_};
    auto match = [&](const std::string &entity, double s, double p) {
      LexicalMatch m;
      m.entity_id = entity;
      m.alias = table_.Primary(entity)->name;
      m.type_id = table_.Primary(entity)->type.id;
      m.name_type = NameType::kPrimaryName;
      m.score = s;
      m.p = p;
      return m;
    };
    auto span = [&](int start, int end) {
      return CandidateSpan{"d", 0, start, end,
                           std::string(doc_.SpanText(0, start, end))};
    };
    linked_ = {{span(1, 2), {match("C3", 1.0, 0.9)}},
               {span(1, 3), {match("C1", 1.0, 0.95)}},
               {span(2, 3), {match("C1", 0.6, 0.8)}},
               {span(5, 6), {match("C2", 1.0, 0.99)}},
               {span(1, 3), {match("C3", 0.7, 0.05)}}};
  }

  ModelConfig Config() const {
    ModelConfig c;
    c.kind = ModelKind::kSelector;
    c.encoder.hidden = 8;
    c.encoder.layers = 1;
    c.encoder.heads = 2;
    c.encoder.ff = 16;
    c.encoder.max_len = 24;
    c.head.hidden = {10, 6};
    c.head.dropout = 0.0;
    return c;
  }

  AliasTable table_;
  Document doc_;
  std::vector<Document> docs_;
  Vocabulary vocab_;
  std::vector<SpanCandidates> linked_;
};

TEST_F(SelectorFixture, LabelsRequireSpanAndEntity) {
  auto samples = MakeSelectorSamples(linked_, {doc_});
  ASSERT_EQ(samples.size(), 5u);
  EXPECT_FALSE(samples[0].positive);
  EXPECT_TRUE(samples[1].positive);
  EXPECT_FALSE(samples[2].positive);
  EXPECT_TRUE(samples[3].positive);
  EXPECT_FALSE(samples[4].positive);
}

TEST_F(SelectorFixture, ZeroModelBatchLoss) {
  ScoringModel<double> model(Config(), vocab_);
  model.Init(1);
  for (auto &t : model.params().tensors()) {
    if (t.name.rfind("head.", 0) == 0) t.value.setZero();
  }
  InputBuilder inputs(&vocab_, &table_, 24);
  inputs.AddDocuments(docs_);
  auto samples = MakeSelectorSamples(linked_, {doc_});
  std::vector<ScoringInput> xs;
  std::vector<bool> labels;
  for (const auto &s : samples) {
    xs.push_back(inputs.Build(ModelKind::kSelector, s.span, s.match));
    labels.push_back(s.positive);
  }
  SelectorConfig config;
  config.positive_weight = 5.0;
  double loss = SelectorBatchLoss(model, xs, labels, config, nullptr, true);
  EXPECT_DOUBLE_EQ(loss, (2 * 5.0 + 3 * 1.0) / 5.0);
}

TEST_F(SelectorFixture, MarginLossGradientOffHinge) {
  ScoringModel<double> model(Config(), vocab_);
  model.Init(2, 0.3);
  InputBuilder inputs(&vocab_, &table_, 24);
  inputs.AddDocuments(docs_);
  auto samples = MakeSelectorSamples(linked_, {doc_});
  std::vector<ScoringInput> xs;
  std::vector<bool> labels;
  for (const auto &s : samples) {
    xs.push_back(inputs.Build(ModelKind::kSelector, s.span, s.match));
    labels.push_back(s.positive);
  }
  SelectorConfig config;
  for (const auto &x : xs) {
    double s = model.Score(x, nullptr);
    ASSERT_GT(std::abs(std::abs(s) - config.margin), 1e-3);
  }
  auto loss = [&](bool grad) {
    return SelectorBatchLoss(model, xs, labels, config, nullptr, grad);
  };
  GradCheckResult r = GradCheck(&model.params(), loss, GradCheckOptions());
  EXPECT_LT(r.max_rel_error, 1e-4);
}

TEST_F(SelectorFixture, TrainingSeparatesSamples) {
  ScoringModel<float> model(Config(), vocab_);
  model.Init(3);
  InputBuilder inputs(&vocab_, &table_, 24);
  inputs.AddDocuments(docs_);
  auto samples = MakeSelectorSamples(linked_, {doc_});
  SelectorConfig config;
  TrainSchedule schedule;
  schedule.epochs = 60;
  schedule.lr = 5e-3;
  schedule.batch_size = 5;
  schedule.target = 1.0;
  auto validate = [&](const ScoringModel<float> &m) {
    auto preds = Infer(ScoreSamples(m, &inputs, samples), config);
    int correct = 0;
    for (const auto &p : preds) {
      correct += (p.start == 1 && p.end == 3 && p.entity_id == "C1") ||
                 (p.start == 5 && p.entity_id == "C2");
    }
    return preds.empty() ? 0.0 : 2.0 * correct / (preds.size() + 2.0);
  };
  SelectorTrainResult r =
      TrainSelector(&model, &inputs, samples, config, schedule, validate);
  EXPECT_EQ(r.positives, 2);
  EXPECT_EQ(r.negatives, 3);
  EXPECT_DOUBLE_EQ(r.best_f1, 1.0);
  EXPECT_DOUBLE_EQ(validate(model), 1.0);
}

TEST_F(SelectorFixture, NoPositivesIsAnError) {
  ScoringModel<float> model(Config(), vocab_);
  model.Init(4);
  InputBuilder inputs(&vocab_, &table_, 24);
  inputs.AddDocuments(docs_);
  auto samples = MakeSelectorSamples(linked_, {doc_});
  samples.erase(std::remove_if(samples.begin(), samples.end(),
                               [](const SelectorSample &s) { return s.positive; }),
                samples.end());
  EXPECT_THROW(TrainSelector(&model, &inputs, samples, SelectorConfig(),
                             TrainSchedule(),
                             [](const ScoringModel<float> &) { return 0.0; }),
               Error);
}

}  // namespace
}  // namespace medlink
