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

#ifndef MEDLINK_EVAL_METRICS_H_
#define MEDLINK_EVAL_METRICS_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "medlink/candgen/candidates-io.h"
#include "medlink/eval/prf.h"
#include "medlink/preprocess/document.h"
#include "medlink/selector/inference.h"

namespace medlink {

// (doc, sentence, start, end, label) where label is an entity or type id.
using MentionKey = std::tuple<std::string, int, int, int, std::string>;

std::set<MentionKey> GoldEntityKeys(const std::vector<Document> &gold);
std::set<MentionKey> PredictionEntityKeys(const std::vector<Prediction> &preds);

// Exact-match counts between two key sets.
PrfReport CompareKeySets(const std::set<MentionKey> &gold,
                         const std::set<MentionKey> &pred);

// CoNLL-style: document, span boundaries and entity must all match.
// Repeated identical predictions count once and are reported as duplicates.
PrfReport MentionLevelPrf(const std::vector<Document> &gold,
                          const std::vector<Prediction> &preds);

using EntitySets = std::map<std::string, std::set<std::string>>;

// Micro-averaged comparison of per-document entity sets.
PrfReport DocumentLevelPrf(const EntitySets &gold, const EntitySets &pred);
// Gold sets are the raw-corpus entities of each document (together with the
// entities of its preprocessed mentions).
PrfReport DocumentLevelPrf(const std::vector<Document> &gold,
                           const std::vector<Prediction> &preds);
EntitySets GoldEntitySets(const std::vector<Document> &gold);
EntitySets PredictedEntitySets(const std::vector<Prediction> &preds);

// Typed recognition: span and semantic type must match; entity ignored.
PrfReport NerPrf(const std::vector<Document> &gold,
                 const std::vector<Prediction> &preds);

// Fraction of gold mentions whose entity is within the first k matches of
// the candidate list generated for the gold span. lists[i] belongs to
// gold_entities[i].
std::vector<std::pair<int, double>> RecallAtK(
    const std::vector<SpanCandidates> &lists,
    const std::vector<std::string> &gold_entities, const std::vector<int> &ks);

// Gold items recovered in a stage's output divided by gold items present in
// its input; empty when no gold item reaches the stage.
std::optional<double> StageRecall(const std::set<MentionKey> &gold,
                                  const std::set<MentionKey> &input,
                                  const std::set<MentionKey> &output);

// All (span, entity) pairs carried by candidate lists.
std::set<MentionKey> CandidateKeys(const std::vector<SpanCandidates> &spans);

struct SubsetReport {
  PrfReport mention;
  PrfReport document;
};

// Restricts gold mentions and predictions to entities inside (seen = true)
// or outside (seen = false) the seen set, then scores both levels.
SubsetReport SeenSubsetPrf(const std::vector<Document> &gold,
                           const std::vector<Prediction> &preds,
                           const std::set<std::string> &seen_entities,
                           bool seen);

// Entities mentioned in training gold.
std::set<std::string> SeenEntities(const std::vector<Document> &train_gold);

// Predictions whose winning lexical match is an acronym alias, against gold
// mentions on the same spans.
PrfReport AcronymPrf(const std::vector<Document> &gold,
                     const std::vector<Prediction> &preds);

struct ErrorBreakdown {
  int64_t false_positives = 0;
  int64_t correct_span_bad_entity = 0;
  int64_t correct_span_and_type = 0;        // subset of the above
  int64_t correct_entity_overlapping = 0;   // true span overlaps, not equal
  int64_t correct_entity_contained = 0;     // true span inside predicted span

  double Fraction(int64_t count) const;
  json ToJson() const;
};

ErrorBreakdown BreakdownFalsePositives(const std::vector<Document> &gold,
                                       const std::vector<Prediction> &preds);

// Mention-level scores with every mention dropped during preprocessing added
// as a false negative.
PrfReport RawCorpusLowerBound(const std::vector<Document> &gold,
                              const std::vector<Prediction> &preds);
PrfReport RawCorpusLowerBound(const PrfReport &mention_level, int64_t dropped);

}  // namespace medlink

#endif  // MEDLINK_EVAL_METRICS_H_
