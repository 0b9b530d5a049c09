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

#include <gtest/gtest.h>

#include "medlink/base/error.h"
#include "medlink/candgen/candidates-io.h"
#include "medlink/linker/linker.h"
#include "medlink/nn/grad-check.h"
#include "test-util.h"

namespace medlink {
namespace {

using testing::Alias;
using testing::MakeDocument;
using testing::MakeMention;

class LinkerFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    table_ = AliasTable::FromEntries(
        {Alias("mass spectrometry", "C0037813", NameType::kPrimaryName, "T058",
               "Health Care Activity"),
         Alias("MS", "C0037813", NameType::kAcronym, "T058",
               "Health Care Activity"),
         Alias("multiple sclerosis", "C0026769", NameType::kPrimaryName,
               "T047", "Disease"),
         Alias("MS", "C0026769", NameType::kAcronym, "T047", "Disease"),
         Alias("mass", "C0577559", NameType::kPrimaryName, "T033", "Finding"),
         Alias("kidney", "C0022646", NameType::kPrimaryName, "T023",
               "Body Part")});
    std::vector<std::string> names;
    for (const auto &e : table_.entries()) names.push_back(e.name);
    matcher_ = std::make_unique<LexicalMatcher>(
        &table_, Vectorizers::Fit(names, VectorizerOptions()));
    doc_ = MakeDocument("d1", "Patients with MS had a renal mass. MS helped.");
    doc_.mentions = {MakeMention(0, 2, 3, "C0026769", "T047"),
                     MakeMention(0, 6, 7, "C0577559", "T033"),
                     MakeMention(0, 5, 6, "C0022646", "T023")};
    VocabularyBuilder b;
    b.Add(doc_.text);
    for (const auto &e : table_.entries()) b.Add(table_.SelectorText(e));
    vocab_ = b.Build();
    docs_ = {doc_};
  }

  ModelConfig Config(ModelKind kind) const {
    ModelConfig c;
    c.kind = kind;
    c.encoder.hidden = 8;
    c.encoder.layers = 1;
    c.encoder.heads = 2;
    c.encoder.ff = 16;
    c.encoder.max_len = 32;
    c.head.hidden = {10, 6};
    c.head.dropout = 0.0;
    return c;
  }

  AliasTable table_;
  std::unique_ptr<LexicalMatcher> matcher_;
  Document doc_;
  std::vector<Document> docs_;
  Vocabulary vocab_;
};

TEST_F(LinkerFixture, ExamplesExcludeUnretrievedGold) {
  auto examples = MakeLinkerExamples({doc_}, *matcher_, 10);
  ASSERT_EQ(examples.size(), 3u);
  EXPECT_GE(examples[0].gold, 0);
  EXPECT_EQ(examples[0].matches[examples[0].gold].entity_id, "C0026769");
  // "renal" shares nothing with any alias.
  EXPECT_EQ(examples[2].gold, -1);
  EXPECT_TRUE(examples[2].matches.empty());
}

TEST_F(LinkerFixture, UniformLogitsGiveLogCandidates) {
  ScoringModel<double> model(Config(ModelKind::kLinker), vocab_);
  model.Init(1);
  for (auto &t : model.params().tensors()) {
    if (t.name.rfind("head.", 0) == 0) t.value.setZero();
  }
  InputBuilder inputs(&vocab_, &table_, 32);
  inputs.AddDocuments(docs_);
  auto examples = MakeLinkerExamples({doc_}, *matcher_, 10);
  std::vector<ScoringInput> cands;
  for (const auto &m : examples[0].matches) {
    cands.push_back(inputs.Build(ModelKind::kLinker, examples[0].span, m));
  }
  ASSERT_GE(cands.size(), 2u);
  double loss = LinkerLoss(model, cands, examples[0].gold, nullptr, false);
  EXPECT_NEAR(loss, std::log(static_cast<double>(cands.size())), 1e-6);
}

TEST_F(LinkerFixture, CrossEntropyGradient) {
  ScoringModel<double> model(Config(ModelKind::kLinker), vocab_);
  model.Init(2, 0.3);
  InputBuilder inputs(&vocab_, &table_, 32);
  inputs.AddDocuments(docs_);
  auto examples = MakeLinkerExamples({doc_}, *matcher_, 4);
  std::vector<ScoringInput> cands;
  for (const auto &m : examples[0].matches) {
    cands.push_back(inputs.Build(ModelKind::kLinker, examples[0].span, m));
  }
  auto loss = [&](bool grad) {
    return LinkerLoss(model, cands, examples[0].gold, nullptr, grad);
  };
  GradCheckResult r = GradCheck(&model.params(), loss, GradCheckOptions());
  EXPECT_LT(r.max_rel_error, 1e-4);
  for (const auto &t : r.tensors) {
    const Tensor<double> *tensor = model.params().Find(t.name);
    EXPECT_EQ(t.checked, std::min<int>(32, tensor->value.size())) << t.name;
  }
}

TEST_F(LinkerFixture, LinkSpansKeepsTopK) {
  ScoringModel<float> model(Config(ModelKind::kLinker), vocab_);
  model.Init(3);
  InputBuilder inputs(&vocab_, &table_, 32);
  inputs.AddDocuments(docs_);
  auto spans = GenerateCandidates({doc_}, *matcher_, StopList::Default(), 3, 10);
  auto full = spans;
  LinkSpans(model, &inputs, &full, 10);
  auto top = spans;
  LinkSpans(model, &inputs, &top, 1);
  ASSERT_EQ(full.size(), spans.size());
  for (size_t i = 0; i < spans.size(); ++i) {
    EXPECT_EQ(full[i].matches.size(), spans[i].matches.size());
    if (spans[i].matches.empty()) {
      EXPECT_TRUE(top[i].matches.empty());
      continue;
    }
    ASSERT_EQ(top[i].matches.size(), 1u);
    EXPECT_EQ(top[i].matches[0].entity_id, full[i].matches[0].entity_id);
    double sum = 0;
    for (size_t j = 0; j < full[i].matches.size(); ++j) {
      sum += *full[i].matches[j].p;
      if (j) {
        EXPECT_GE(*full[i].matches[j - 1].p, *full[i].matches[j].p);
      }
    }
    EXPECT_NEAR(sum, 1.0, 1e-6);
  }
}

TEST_F(LinkerFixture, TrainingFitsTinySet) {
  ScoringModel<float> model(Config(ModelKind::kLinker), vocab_);
  model.Init(4);
  InputBuilder inputs(&vocab_, &table_, 32);
  inputs.AddDocuments(docs_);
  auto examples = MakeLinkerExamples({doc_}, *matcher_, 10);
  TrainSchedule schedule;
  schedule.epochs = 30;
  schedule.lr = 5e-3;
  schedule.target = 1.0;
  LinkerTrainResult r = TrainLinker(&model, &inputs, examples, examples, schedule);
  EXPECT_EQ(r.trainable, 2);
  EXPECT_EQ(r.excluded, 1);
  EXPECT_FALSE(r.history.empty());
  // Recall counts the unretrieved mention as a miss.
  EXPECT_NEAR(r.best_recall, 2.0 / 3.0, 1e-9);
  EXPECT_NEAR(LinkerRecallAt1(model, &inputs, examples), 2.0 / 3.0, 1e-9);
}

TEST_F(LinkerFixture, NoTrainableMentionIsAnError) {
  ScoringModel<float> model(Config(ModelKind::kLinker), vocab_);
  model.Init(5);
  InputBuilder inputs(&vocab_, &table_, 32);
  inputs.AddDocuments(docs_);
  auto examples = MakeLinkerExamples({doc_}, *matcher_, 10);
  std::vector<LinkerExample> none = {examples[2]};
  EXPECT_THROW(TrainLinker(&model, &inputs, none, none, TrainSchedule()),
               Error);
}

}  // namespace
}  // namespace medlink
