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

#ifndef MEDLINK_SELECTOR_INFERENCE_H_
#define MEDLINK_SELECTOR_INFERENCE_H_

#include <string>
#include <vector>

#include "medlink/base/io.h"
#include "medlink/kb/alias-table.h"
#include "medlink/preprocess/document.h"

namespace medlink {

// A scored (span, entity) pair, and the form predictions take.
struct Prediction {
  std::string doc_id;
  int sentence = 0;
  int start = 0;
  int end = 0;
  std::string entity_id;
  std::string type_id;
  double score = 0.0;          // selector score s
  double p = 0.0;              // linker probability
  double lexical_score = 0.0;  // s_e
  NameType name_type = NameType::kSynonym;

  bool Overlaps(const Prediction &o) const {
    return doc_id == o.doc_id && sentence == o.sentence && start < o.end &&
           o.start < end;
  }
  bool operator==(const Prediction &other) const = default;
};

// Every sample scoring above tau, in input order.
std::vector<Prediction> InferThreshold(const std::vector<Prediction> &samples,
                                       double tau);

// Non-overlapping selection among samples scoring above tau. Per document,
// repeatedly: take the earliest-starting remaining sample (ties: longer
// span); among the remaining samples overlapping it pick the highest score
// (ties: earlier start, longer span, entity id); emit it and discard
// everything overlapping it. Output is sorted by document, sentence, start.
std::vector<Prediction> InferGreedy(const std::vector<Prediction> &samples,
                                    double tau);

// Document id, sentence, start, end, entity id ordering.
bool PredictionPositionOrder(const Prediction &a, const Prediction &b);

json PredictionToJson(const Prediction &p, const Document *doc);
Prediction PredictionFromJson(const json &j);

void WritePredictionsJsonl(const std::string &path,
                           const std::vector<Prediction> &preds,
                           const std::vector<Document> &docs);
std::vector<Prediction> ReadPredictionsJsonl(const std::string &path);

// PubTator output: document text lines followed by one mention line per
// prediction with character offsets into the preprocessed text.
void WritePredictionsPubTator(const std::string &path,
                              const std::vector<Prediction> &preds,
                              const std::vector<Document> &docs);

}  // namespace medlink

#endif  // MEDLINK_SELECTOR_INFERENCE_H_
