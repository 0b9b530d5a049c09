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

#ifndef MEDLINK_SELECTOR_SELECTOR_H_
#define MEDLINK_SELECTOR_SELECTOR_H_

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "medlink/candgen/candidates-io.h"
#include "medlink/linker/linker.h"
#include "medlink/nn/scoring-model.h"
#include "medlink/selector/inference.h"

namespace medlink {

enum class InferenceMode { kThreshold, kGreedy };

std::string_view InferenceModeName(InferenceMode mode);
InferenceMode ParseInferenceMode(std::string_view name);

struct SelectorConfig {
  double margin = 1.0;           // M
  double positive_weight = 5.0;  // W_+
  double tau = 0.0;
  InferenceMode mode = InferenceMode::kGreedy;
  // Keep at most this many negatives per positive during training (sampled
  // deterministically each epoch); <= 0 keeps every negative.
  double negative_ratio = 0.0;
};

// Thresholded max-margin loss: W_+ * max(0, M - s) for positives and
// max(0, M + s) for negatives.
double SelectorLoss(double s, bool positive, double margin,
                    double positive_weight);
// Derivative of SelectorLoss with respect to s (0 on the flat side of the
// hinge; the kink itself takes the flat-side value).
double SelectorLossGrad(double s, bool positive, double margin,
                        double positive_weight);

// One linked (span, entity) pair with its label.
struct SelectorSample {
  CandidateSpan span;
  LexicalMatch match;  // carries s_e and p from the linker
  bool positive = false;
};

// Samples from linked spans (each span contributes its top linked
// candidates). Positive iff the span boundaries and entity match a gold
// mention of the document.
std::vector<SelectorSample> MakeSelectorSamples(
    const std::vector<SpanCandidates> &linked, const std::vector<Document> &docs);

// Mean selector loss over a batch; accumulates gradients of the mean when
// compute_grad is set.
template <typename T>
double SelectorBatchLoss(const ScoringModel<T> &model,
                         const std::vector<ScoringInput> &inputs,
                         const std::vector<bool> &labels,
                         const SelectorConfig &config,
                         std::mt19937_64 *dropout_rng, bool compute_grad);

// Scores samples into predictions (inference mode, no dropout).
std::vector<Prediction> ScoreSamples(const ScoringModel<float> &model,
                                     InputBuilder *inputs,
                                     const std::vector<SelectorSample> &samples);

std::vector<Prediction> Infer(const std::vector<Prediction> &scored,
                              const SelectorConfig &config);

struct SelectorTrainResult {
  std::vector<EpochRecord> history;
  int best_epoch = 0;
  double best_f1 = 0.0;
  int positives = 0;
  int negatives = 0;
};

// Validation callback: returns the model-selection metric (document-level
// F1) for the current parameters.
using SelectorValidator = std::function<double(const ScoringModel<float> &)>;

SelectorTrainResult TrainSelector(ScoringModel<float> *model,
                                  InputBuilder *inputs,
                                  const std::vector<SelectorSample> &train,
                                  const SelectorConfig &config,
                                  const TrainSchedule &schedule,
                                  const SelectorValidator &validate);

}  // namespace medlink

#endif  // MEDLINK_SELECTOR_SELECTOR_H_
