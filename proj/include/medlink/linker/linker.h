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

#ifndef MEDLINK_LINKER_LINKER_H_
#define MEDLINK_LINKER_LINKER_H_

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "medlink/base/io.h"
#include "medlink/candgen/candidates-io.h"
#include "medlink/kb/alias-table.h"
#include "medlink/nn/scoring-model.h"
#include "medlink/preprocess/document.h"

namespace medlink {

// Builds scorer inputs for (span, match) pairs: cached per-document pieces
// and entity texts (linker text of the entity, or selector text of the
// matched alias).
class InputBuilder {
 public:
  InputBuilder(const Vocabulary *vocab, const AliasTable *table, int max_len);

  // Registers documents by id; they must outlive the builder.
  void AddDocuments(const std::vector<Document> &docs);
  void AddDocuments(std::vector<Document> &&docs) = delete;
  const Document &doc(const std::string &id) const;

  ScoringInput Build(ModelKind kind, const CandidateSpan &span,
                     const LexicalMatch &match);

  std::string EntityText(ModelKind kind, const LexicalMatch &match) const;

 private:
  const Vocabulary *vocab_;
  const AliasTable *table_;
  int max_len_;
  std::unordered_map<std::string, const Document *> docs_;
  std::unordered_map<std::string, DocumentPieces> pieces_;
  std::unordered_map<std::string, std::vector<int32_t>> text_ids_;
};

// Softmax over logits.
std::vector<double> LinkerDistribution(const std::vector<double> &logits);

// Cross-entropy of the gold candidate under the softmax of the candidates'
// logits. Accumulates gradients when compute_grad is set.
template <typename T>
double LinkerLoss(const ScoringModel<T> &model,
                  const std::vector<ScoringInput> &candidates, int gold,
                  std::mt19937_64 *dropout_rng, bool compute_grad);

// A gold mention with its candidate list; gold is the index of the correct
// entity or -1 when it was not retrieved.
struct LinkerExample {
  CandidateSpan span;
  std::vector<LexicalMatch> matches;
  std::string gold_entity;
  int gold = -1;
};

std::vector<LinkerExample> MakeLinkerExamples(
    const std::vector<Document> &docs, const LexicalMatcher &matcher, int k_m);

struct TrainSchedule {
  int epochs = 3;
  double lr = 2e-5;
  double warmup_fraction = 0.1;
  double clip_norm = 1.0;
  int batch_size = 1;
  uint64_t seed = 13;
  // Stop after this many epochs without improvement; 0 runs every epoch.
  int patience = 0;
  // Stop as soon as the validation metric reaches this value.
  double target = 2.0;
};

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0.0;
  double metric = 0.0;  // validation recall@1 (linker) or F1 (selector)
  double seconds = 0.0;
};

struct LinkerTrainResult {
  std::vector<EpochRecord> history;
  int best_epoch = 0;
  double best_recall = 0.0;
  int trainable = 0;
  int excluded = 0;  // gold entity not among the candidates
};

// Fraction of examples whose top-ranked candidate is the gold entity (all
// examples count, including those whose gold was not retrieved).
double LinkerRecallAt1(const ScoringModel<float> &model, InputBuilder *inputs,
                       const std::vector<LinkerExample> &examples);

// Trains with one optimizer step per mention; keeps the parameters of the
// epoch with the best validation recall@1 (training recall when no
// validation examples are given).
LinkerTrainResult TrainLinker(ScoringModel<float> *model, InputBuilder *inputs,
                              const std::vector<LinkerExample> &train,
                              const std::vector<LinkerExample> &valid,
                              const TrainSchedule &schedule);

// Scores each span's candidates, stores p on every match and keeps the
// top k_l by p (ties: higher lexical score, then entity id).
void LinkSpans(const ScoringModel<float> &model, InputBuilder *inputs,
               std::vector<SpanCandidates> *spans, int k_l);

}  // namespace medlink

#endif  // MEDLINK_LINKER_LINKER_H_
