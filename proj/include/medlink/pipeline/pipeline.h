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

#ifndef MEDLINK_PIPELINE_PIPELINE_H_
#define MEDLINK_PIPELINE_PIPELINE_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "medlink/candgen/candidates-io.h"
#include "medlink/candgen/lexical-matcher.h"
#include "medlink/candgen/stop-words.h"
#include "medlink/kb/alias-table.h"
#include "medlink/pipeline/config.h"
#include "medlink/preprocess/corpus.h"
#include "medlink/selector/inference.h"

namespace medlink {

// File names inside KB and stage directories.
inline constexpr char kAliasFile[] = "alias.jsonl";
inline constexpr char kIndexFile[] = "index.bin";
inline constexpr char kVectorizerFile[] = "vectorizers.bin";
inline constexpr char kKbReportFile[] = "build-report.json";
inline constexpr char kDocumentsFile[] = "docs.jsonl";
inline constexpr char kIob2File[] = "corpus.iob2";
inline constexpr char kPreprocessReportFile[] = "preprocess-report.json";
inline constexpr char kCandidatesFile[] = "candidates.jsonl";
inline constexpr char kLinkedFile[] = "linked.jsonl";
inline constexpr char kPredictionsFile[] = "predictions.jsonl";
inline constexpr char kPredictionsPubTatorFile[] = "predictions.pubtator";
inline constexpr char kTimingFile[] = "timing.json";

// An alias table with its fitted vectorizers and inverted index. Not movable:
// the matcher points into the table.
class KnowledgeBase {
 public:
  KnowledgeBase(AliasTable table, const VectorizerOptions &options,
                double k_w);
  KnowledgeBase(const KnowledgeBase &) = delete;
  KnowledgeBase &operator=(const KnowledgeBase &) = delete;

  static std::unique_ptr<KnowledgeBase> Load(const std::string &dir,
                                             double k_w);

  const AliasTable &table() const { return table_; }
  const LexicalMatcher &matcher() const { return *matcher_; }

  void Save(const std::string &dir) const;

 private:
  KnowledgeBase() = default;

  AliasTable table_;
  std::unique_ptr<LexicalMatcher> matcher_;
};

// build-kb: alias table, vectorizers and index from ontology files.
AliasBuildReport BuildKnowledgeBase(const std::string &ontology_path,
                                    const std::string &hierarchy_path,
                                    const std::string &types_path,
                                    const std::string &out_dir,
                                    const PipelineConfig &config);

// preprocess: PubTator corpus to documents, IOB2 and a drop-count report.
PreprocessReport PreprocessToDirectory(const std::string &corpus_path,
                                       const std::string &abbrevs_path,
                                       const std::string &out_dir);

StopList LoadStopList(const PipelineConfig &config);

// Word-piece vocabulary over corpus text and entity representations.
Vocabulary BuildModelVocabulary(const std::vector<Document> &docs,
                                const AliasTable &table,
                                const PipelineConfig &config);

// Candidate spans with their lexical matches (K_S, K_M from the config).
std::vector<SpanCandidates> RunCandidateGeneration(
    const KnowledgeBase &kb, const std::vector<Document> &docs,
    const PipelineConfig &config);

// Reranks candidates with the linker, keeping the top K_L per span.
void RunLinker(const KnowledgeBase &kb, const ScoringModel<float> &linker,
               const std::vector<Document> &docs, const PipelineConfig &config,
               std::vector<SpanCandidates> *spans);

// Scores linked samples with the selector and applies the configured
// inference mode.
std::vector<Prediction> RunSelector(const KnowledgeBase &kb,
                                    const ScoringModel<float> &selector,
                                    const std::vector<Document> &docs,
                                    const std::vector<SpanCandidates> &linked,
                                    const PipelineConfig &config);

// Candidate generation, linking and selection in one call.
std::vector<Prediction> Predict(const KnowledgeBase &kb,
                                const ScoringModel<float> &linker,
                                const ScoringModel<float> &selector,
                                const std::vector<Document> &docs,
                                const PipelineConfig &config);

struct LinkerTraining {
  std::unique_ptr<ScoringModel<float>> model;
  LinkerTrainResult result;
};

// Trains a fresh linker; valid may equal train when no split is available.
LinkerTraining TrainLinkerStage(const KnowledgeBase &kb,
                                const std::vector<Document> &train,
                                const std::vector<Document> &valid,
                                const PipelineConfig &config);

struct SweepRow {
  double positive_weight = 0.0;
  double best_f1 = 0.0;
  int best_epoch = 0;
};

struct SelectorTraining {
  std::unique_ptr<ScoringModel<float>> model;
  SelectorTrainResult result;
  std::vector<SweepRow> sweep;
  double positive_weight = 0.0;
};

// Trains one selector per W_+ in the sweep (or the configured W_+ when the
// sweep is empty) and keeps the one with the best validation document F1.
SelectorTraining TrainSelectorStage(const KnowledgeBase &kb,
                                    const ScoringModel<float> &linker,
                                    const std::vector<Document> &train,
                                    const std::vector<Document> &valid,
                                    const PipelineConfig &config);

json HistoryToJson(const std::vector<EpochRecord> &history);

enum class Stage { kCandgen, kLink, kSelect, kAll };
Stage ParseStage(std::string_view name);
std::string_view StageName(Stage stage);

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
  int64_t items = 0;
};

struct RunOptions {
  Stage stage = Stage::kAll;
  std::string kb_dir;
  std::string in_dir;
  std::string out_dir;
  std::vector<std::string> models;  // kinds are read from the checkpoints
};

// Runs one stage (or all) over directory intermediates and writes
// timing.json next to the outputs.
std::vector<StageTiming> RunStages(const RunOptions &options,
                                   const PipelineConfig &config);

}  // namespace medlink

#endif  // MEDLINK_PIPELINE_PIPELINE_H_
