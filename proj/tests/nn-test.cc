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
#include "medlink/linker/binning.h"
#include "medlink/linker/linker.h"
#include "medlink/nn/adam.h"
#include "medlink/nn/checkpoint.h"
#include "medlink/nn/cross-input.h"
#include "medlink/nn/encoder.h"
#include "medlink/nn/grad-check.h"
#include "medlink/nn/layers.h"
#include "medlink/nn/scoring-model.h"
#include "medlink/nn/vocabulary.h"
#include "test-util.h"

namespace medlink {
namespace {

using testing::MakeDocument;

Vocabulary SmallVocabulary() {
  VocabularyBuilder b;
  b.Add("health care activity , mass spectrometry ms multiple sclerosis");
  b.Add("biologic function patients with ms were treated by mass spectrometry");
  return b.Build();
}

EncoderConfig TinyEncoder(int vocab_size) {
  EncoderConfig c;
  c.vocab_size = vocab_size;
  c.hidden = 8;
  c.layers = 2;
  c.heads = 2;
  c.ff = 16;
  c.max_len = 24;
  return c;
}

ModelConfig TinyModel(ModelKind kind, int vocab_size) {
  ModelConfig c;
  c.kind = kind;
  c.encoder = TinyEncoder(vocab_size);
  c.head.hidden = {12, 6};
  c.head.dropout = 0.0;
  return c;
}

CrossInput SampleInput(const Vocabulary &vocab, int start = 2, int end = 3,
                       const std::string &entity = "biologic function , ms") {
  Document doc = MakeDocument("d", "Patients with MS were treated.");
  DocumentPieces pieces = DocumentPieces::Build(doc, vocab);
  return BuildCrossInput(pieces, start, end, vocab.Encode(entity), 24);
}

template <typename T>
RowVec<T> Pooled(const Encoder<T> &enc, const CrossInput &in) {
  return enc.Forward(in, nullptr);
}

TEST(VocabularyTest, SpecialTokensAndUnknown) {
  Vocabulary v = SmallVocabulary();
  EXPECT_EQ(v.Id("[PAD]"), Vocabulary::kPad);
  EXPECT_EQ(v.Id("zebra"), Vocabulary::kUnk);
  EXPECT_NE(v.Id("ms"), Vocabulary::kUnk);
  auto ids = v.Encode("MS , Zebra");
  ASSERT_EQ(ids.size(), 3u);
  EXPECT_EQ(ids[0], v.Id("ms"));
  EXPECT_EQ(ids[2], Vocabulary::kUnk);
  Vocabulary back = Vocabulary::FromJson(v.ToJson());
  EXPECT_EQ(back.tokens(), v.tokens());
}

TEST(CrossInputTest, MinimalLength) {
  Vocabulary v = SmallVocabulary();
  Document doc = MakeDocument("d", "MS");
  DocumentPieces pieces = DocumentPieces::Build(doc, v);
  CrossInput in = BuildCrossInput(pieces, 0, 1, v.Encode("ms"), 128);
  EXPECT_EQ(in.size(), 5);
  EXPECT_EQ(in.ids[0], Vocabulary::kCls);
  EXPECT_EQ(in.ids[2], Vocabulary::kSep);
  EXPECT_EQ(in.ids[4], Vocabulary::kSep);
  EXPECT_EQ(in.mention_mask, (std::vector<uint8_t>{0, 1, 0, 0, 0}));
  EXPECT_EQ(in.segments, (std::vector<uint8_t>{0, 0, 0, 1, 1}));
}

TEST(CrossInputTest, EntityTextPieces) {
  Vocabulary v = SmallVocabulary();
  Document doc = MakeDocument("d", "Patients with MS were treated.");
  DocumentPieces pieces = DocumentPieces::Build(doc, v);
  CrossInput linker = BuildCrossInput(
      pieces, 2, 3, v.Encode("Health Care Activity , Mass Spectrometry"), 128);
  std::vector<std::string> tail;
  bool after = false;
  for (int i = 1; i < linker.size(); ++i) {
    if (after) tail.push_back(v.Token(linker.ids[i]));
    if (linker.ids[i] == Vocabulary::kSep) after = true;
  }
  EXPECT_EQ(tail, (std::vector<std::string>{"health", "care", "activity", ",",
                                            "mass", "spectrometry", "[SEP]"}));
}

TEST(CrossInputTest, ContextTrimmedToMaxLength) {
  Vocabulary v = SmallVocabulary();
  std::string text;
  for (int i = 0; i < 40; ++i) text += "patients with ms were treated ";
  Document doc = MakeDocument("d", text);
  DocumentPieces pieces = DocumentPieces::Build(doc, v);
  CrossInput in = BuildCrossInput(pieces, 100, 101, v.Encode("ms"), 16);
  EXPECT_EQ(in.size(), 16);
  int mention = 0;
  for (uint8_t b : in.mention_mask) mention += b;
  EXPECT_EQ(mention, 1);
}

TEST(EncoderTest, DeterministicAndMarkerSensitive) {
  Vocabulary v = SmallVocabulary();
  ParamSet<double> params;
  Encoder<double> enc(TinyEncoder(v.size()), &params, "enc.");
  std::mt19937_64 rng(1);
  enc.Init(&rng, 0.3);
  CrossInput in = SampleInput(v);
  RowVec<double> a = Pooled(enc, in);
  RowVec<double> b = Pooled(enc, in);
  EXPECT_TRUE((a.array() == b.array()).all());
  CrossInput flipped = in;
  flipped.mention_mask[1] ^= 1;
  EXPECT_GT((Pooled(enc, flipped) - a).norm(), 1e-9);
  params.Find("enc.mention_marker")->value.setZero();
  EXPECT_LT((Pooled(enc, flipped) - Pooled(enc, in)).norm(), 1e-15);
}

TEST(EncoderTest, PaddingDoesNotChangeOutput) {
  Vocabulary v = SmallVocabulary();
  ParamSet<double> params;
  Encoder<double> enc(TinyEncoder(v.size()), &params, "enc.");
  std::mt19937_64 rng(2);
  enc.Init(&rng, 0.3);
  CrossInput in = SampleInput(v);
  CrossInput padded = in;
  PadCrossInput(&padded, 24);
  EXPECT_EQ(padded.size(), 24);
  EXPECT_LT((Pooled(enc, padded) - Pooled(enc, in)).norm(), 1e-12);
}

TEST(EncoderTest, FloatMatchesDouble) {
  Vocabulary v = SmallVocabulary();
  ParamSet<double> pd;
  Encoder<double> ed(TinyEncoder(v.size()), &pd, "enc.");
  std::mt19937_64 rng(3);
  ed.Init(&rng, 0.3);
  ParamSet<float> pf;
  Encoder<float> ef(TinyEncoder(v.size()), &pf, "enc.");
  pf.CopyValuesFrom(pd);
  CrossInput in = SampleInput(v);
  RowVec<double> d = Pooled(ed, in);
  RowVec<double> f = Pooled(ef, in).cast<double>();
  for (int i = 0; i < d.size(); ++i) {
    EXPECT_NEAR(f[i], d[i], 1e-4 * std::max(1.0, std::abs(d[i])));
  }
}

TEST(EncoderTest, GradientMatchesFiniteDifferences) {
  Vocabulary v = SmallVocabulary();
  ParamSet<double> params;
  Encoder<double> enc(TinyEncoder(v.size()), &params, "enc.");
  std::mt19937_64 rng(4);
  enc.Init(&rng, 0.3);
  CrossInput in = SampleInput(v);
  PadCrossInput(&in, 20);
  RowVec<double> w = RowVec<double>::LinSpaced(8, -1.0, 1.0);
  auto loss = [&](bool grad) {
    Encoder<double>::Cache cache;
    RowVec<double> pooled = enc.Forward(in, grad ? &cache : nullptr);
    double l = pooled.dot(w);
    if (grad) enc.Backward(in, cache, w);
    return l;
  };
  GradCheckResult r = GradCheck(&params, loss, GradCheckOptions());
  EXPECT_TRUE(r.ok()) << r.max_rel_error;
  EXPECT_LT(r.max_rel_error, 1e-4);
}

TEST(LayersTest, SoftmaxHandlesNegativeInfinity) {
  auto p = Softmax<double>({2.0, -std::numeric_limits<double>::infinity()});
  EXPECT_DOUBLE_EQ(p[0], 1.0);
  EXPECT_DOUBLE_EQ(p[1], 0.0);
}

TEST(LayersTest, GeluValues) {
  EXPECT_DOUBLE_EQ(Gelu(0.0), 0.0);
  EXPECT_NEAR(Gelu(1.0), 0.8413447460685429, 1e-12);
  double h = 1e-6;
  EXPECT_NEAR(GeluGrad(0.7), (Gelu(0.7 + h) - Gelu(0.7 - h)) / (2 * h), 1e-8);
}

TEST(BinningTest, LexicalScoreBins) {
  BinningSpec s = BinningSpec::LexicalScoreBins();
  EXPECT_EQ(s.num_bins(), 5);
  EXPECT_EQ(s.Index(0.3), 1);
  EXPECT_EQ(s.Index(0.0), 0);
  EXPECT_EQ(s.Index(1.0), 4);
  EXPECT_EQ(s.Index(0.2), 1);
}

TEST(BinningTest, ProbabilityBins) {
  BinningSpec s = BinningSpec::ProbabilityBins();
  EXPECT_EQ(s.num_bins(), 16);
  EXPECT_EQ(s.Index(0.95), 11);
  EXPECT_EQ(s.Index(0.0), 0);
  EXPECT_EQ(s.Index(0.45), 1);
  EXPECT_EQ(s.Index(1.0), 15);
  EXPECT_THROW(BinningSpec({0.5, 0.2}), Error);
}

TEST(AdamTest, ScheduleWarmsUpAndDecays) {
  WarmupLinearSchedule s(100, 0.1);
  EXPECT_LT(s.Factor(0), s.Factor(9));
  EXPECT_NEAR(s.Factor(9), 1.0, 1e-12);
  EXPECT_GT(s.Factor(50), s.Factor(90));
  EXPECT_GE(s.Factor(99), 0.0);
}

TEST(AdamTest, MinimizesQuadratic) {
  ParamSet<double> params;
  Tensor<double> *t = params.Add("x", 1, 3);
  t->value << 3.0, -2.0, 1.0;
  AdamConfig config;
  config.lr = 0.1;
  config.clip_norm = 0.0;
  Adam<double> adam(&params, config);
  for (int i = 0; i < 500; ++i) {
    t->grad = 2.0 * t->value;
    adam.Step(config.lr);
  }
  EXPECT_LT(t->value.norm(), 1e-2);
  EXPECT_EQ(t->grad.norm(), 0.0);
}

TEST(AdamTest, ClipsGlobalNorm) {
  ParamSet<double> params;
  Tensor<double> *t = params.Add("x", 1, 2);
  t->grad << 30.0, 40.0;
  AdamConfig config;
  config.clip_norm = 1.0;
  Adam<double> adam(&params, config);
  EXPECT_NEAR(adam.Step(0.0), 50.0, 1e-12);
}

TEST(ScoringModelTest, ZeroHeadGivesZeroScore) {
  Vocabulary v = SmallVocabulary();
  ScoringModel<double> model(TinyModel(ModelKind::kLinker, v.size()), v);
  model.Init(5);
  for (auto &t : model.params().tensors()) {
    if (t.name.rfind("head.", 0) == 0) t.value.setZero();
  }
  ScoringInput x{SampleInput(v), NameType::kAcronym, 0.7, 0.0};
  EXPECT_EQ(model.Score(x, nullptr), 0.0);
  x.name_type = NameType::kPrimaryName;
  EXPECT_EQ(model.Score(x, nullptr), 0.0);
}

TEST(ScoringModelTest, NameTypeAndProbabilityChangeScore) {
  Vocabulary v = SmallVocabulary();
  ScoringModel<double> linker(TinyModel(ModelKind::kLinker, v.size()), v);
  linker.Init(6);
  ScoringInput a{SampleInput(v), NameType::kAcronym, 0.7, 0.0};
  ScoringInput b = a;
  b.name_type = NameType::kSynonym;
  EXPECT_NE(linker.Score(a, nullptr), linker.Score(b, nullptr));
  EXPECT_EQ(linker.Score(a, nullptr), linker.Score(a, nullptr));

  ScoringModel<double> selector(TinyModel(ModelKind::kSelector, v.size()), v);
  selector.Init(6);
  ScoringInput c{SampleInput(v), NameType::kAcronym, 0.7, 0.3};
  ScoringInput d = c;
  d.linker_p = 0.97;
  EXPECT_NE(selector.Score(c, nullptr), selector.Score(d, nullptr));
  EXPECT_EQ(selector.feature_dim(), linker.feature_dim() + 1 + 8);
}

TEST(ScoringModelTest, DropoutOnlyWhenTraining) {
  Vocabulary v = SmallVocabulary();
  ModelConfig config = TinyModel(ModelKind::kLinker, v.size());
  config.head.dropout = 0.5;
  ScoringModel<double> model(config, v);
  model.Init(7);
  ScoringInput x{SampleInput(v), NameType::kAcronym, 0.7, 0.0};
  double eval = model.Score(x, nullptr);
  EXPECT_EQ(model.Score(x, nullptr), eval);
  std::mt19937_64 rng(1);
  bool differs = false;
  for (int i = 0; i < 10 && !differs; ++i) {
    differs = model.Score(x, nullptr, &rng) != eval;
  }
  EXPECT_TRUE(differs);
}

TEST(ScoringModelTest, ParameterCountIgnoresKnowledgeBase) {
  Vocabulary v = SmallVocabulary();
  ScoringModel<float> a(TinyModel(ModelKind::kLinker, v.size()), v);
  int64_t expected = 0;
  for (const auto &t : a.params().tensors()) expected += t.value.size();
  EXPECT_EQ(a.NumParams(), expected);
  for (const auto &t : a.params().tensors()) {
    EXPECT_EQ(t.name.find("entity"), std::string::npos) << t.name;
  }
}

TEST(CheckpointTest, RoundTripPreservesScores) {
  Vocabulary v = SmallVocabulary();
  ScoringModel<float> model(TinyModel(ModelKind::kSelector, v.size()), v);
  model.Init(8);
  std::string dir = testing::ScratchDir("ckpt");
  SaveCheckpoint(dir + "/m.ckpt", model, json{{"note", "x"}});
  json meta;
  auto back = LoadCheckpoint<float>(dir + "/m.ckpt", &meta);
  EXPECT_EQ(meta["note"], "x");
  EXPECT_EQ(back->kind(), ModelKind::kSelector);
  EXPECT_EQ(back->NumParams(), model.NumParams());
  ScoringInput x{SampleInput(v), NameType::kAcronym, 0.7, 0.4};
  EXPECT_EQ(back->Score(x, nullptr), model.Score(x, nullptr));
  auto wide = LoadCheckpoint<double>(dir + "/m.ckpt");
  EXPECT_NEAR(wide->Score(x, nullptr), model.Score(x, nullptr), 1e-4);
  EXPECT_EQ(ReadCheckpointHeader(dir + "/m.ckpt").vocab.tokens(), v.tokens());
}

TEST(LinkerDistributionTest, Properties) {
  auto uniform = LinkerDistribution(std::vector<double>(50, 0.3));
  for (double p : uniform) EXPECT_NEAR(p, 0.02, 1e-12);
  auto limit = LinkerDistribution(
      {1.0, -std::numeric_limits<double>::infinity()});
  EXPECT_EQ(limit[0], 1.0);
  EXPECT_EQ(limit[1], 0.0);
  EXPECT_EQ(LinkerDistribution({4.2}), std::vector<double>{1.0});
  EXPECT_TRUE(LinkerDistribution({}).empty());
  std::vector<double> logits = {0.1, 2.0, -1.0, 0.5};
  auto p = LinkerDistribution(logits);
  double sum = 0;
  for (double x : p) sum += x;
  EXPECT_NEAR(sum, 1.0, 1e-12);
  for (double &l : logits) l += 100.0;
  auto shifted = LinkerDistribution(logits);
  for (size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(p[i], shifted[i], 1e-12);
}

}  // namespace
}  // namespace medlink
