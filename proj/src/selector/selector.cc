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

#include "medlink/selector/selector.h"

#include <algorithm>
#include <chrono>
#include <set>
#include <tuple>

#include <spdlog/spdlog.h>

#include "medlink/base/error.h"
#include "medlink/nn/adam.h"

namespace medlink {

std::string_view InferenceModeName(InferenceMode mode) {
  return mode == InferenceMode::kGreedy ? "greedy" : "threshold";
}

InferenceMode ParseInferenceMode(std::string_view name) {
  if (name == "greedy") return InferenceMode::kGreedy;
  if (name == "threshold") return InferenceMode::kThreshold;
  throw UsageError("unknown inference mode: " + std::string(name));
}

double SelectorLoss(double s, bool positive, double margin,
                    double positive_weight) {
  return positive ? positive_weight * std::max(0.0, margin - s)
                  : std::max(0.0, margin + s);
}

double SelectorLossGrad(double s, bool positive, double margin,
                        double positive_weight) {
  if (positive) return s < margin ? -positive_weight : 0.0;
  return s > -margin ? 1.0 : 0.0;
}

std::vector<SelectorSample> MakeSelectorSamples(
    const std::vector<SpanCandidates> &linked,
    const std::vector<Document> &docs) {
  std::set<std::tuple<std::string, int, int, int, std::string>> gold;
  for (const Document &d : docs) {
    for (const Mention &m : d.mentions) {
      gold.emplace(d.id, m.sentence, m.start, m.end, m.entity_id);
    }
  }
  std::vector<SelectorSample> samples;
  for (const SpanCandidates &sc : linked) {
    for (const LexicalMatch &m : sc.matches) {
      SelectorSample s;
      s.span = sc.span;
      s.match = m;
      s.positive = gold.count({sc.span.doc_id, sc.span.sentence, sc.span.start,
                               sc.span.end, m.entity_id}) > 0;
      samples.push_back(std::move(s));
    }
  }
  return samples;
}

template <typename T>
double SelectorBatchLoss(const ScoringModel<T> &model,
                         const std::vector<ScoringInput> &inputs,
                         const std::vector<bool> &labels,
                         const SelectorConfig &config,
                         std::mt19937_64 *dropout_rng, bool compute_grad) {
  if (inputs.empty() || inputs.size() != labels.size()) {
    throw Error("selector batch: bad sizes");
  }
  const double n = static_cast<double>(inputs.size());
  double total = 0.0;
  typename ScoringModel<T>::Cache cache;
  for (size_t i = 0; i < inputs.size(); ++i) {
    double s = model.Score(inputs[i], compute_grad ? &cache : nullptr,
                           dropout_rng);
    total += SelectorLoss(s, labels[i], config.margin, config.positive_weight);
    if (compute_grad) {
      double d = SelectorLossGrad(s, labels[i], config.margin,
                                  config.positive_weight) / n;
      if (d != 0.0) model.Backward(inputs[i], cache, static_cast<T>(d));
    }
  }
  return total / n;
}

template double SelectorBatchLoss<float>(const ScoringModel<float> &,
                                         const std::vector<ScoringInput> &,
                                         const std::vector<bool> &,
                                         const SelectorConfig &,
                                         std::mt19937_64 *, bool);
template double SelectorBatchLoss<double>(const ScoringModel<double> &,
                                          const std::vector<ScoringInput> &,
                                          const std::vector<bool> &,
                                          const SelectorConfig &,
                                          std::mt19937_64 *, bool);

std::vector<Prediction> ScoreSamples(const ScoringModel<float> &model,
                                     InputBuilder *inputs,
                                     const std::vector<SelectorSample> &samples) {
  std::vector<Prediction> out;
  out.reserve(samples.size());
  for (const SelectorSample &s : samples) {
    ScoringInput x = inputs->Build(ModelKind::kSelector, s.span, s.match);
    Prediction p;
    p.doc_id = s.span.doc_id;
    p.sentence = s.span.sentence;
    p.start = s.span.start;
    p.end = s.span.end;
    p.entity_id = s.match.entity_id;
    p.type_id = s.match.type_id;
    p.score = model.Score(x, nullptr);
    p.p = s.match.p.value_or(0.0);
    p.lexical_score = s.match.score;
    p.name_type = s.match.name_type;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Prediction> Infer(const std::vector<Prediction> &scored,
                              const SelectorConfig &config) {
  if (config.mode == InferenceMode::kGreedy) {
    return InferGreedy(scored, config.tau);
  }
  std::vector<Prediction> out = InferThreshold(scored, config.tau);
  std::sort(out.begin(), out.end(), PredictionPositionOrder);
  return out;
}

SelectorTrainResult TrainSelector(ScoringModel<float> *model,
                                  InputBuilder *inputs,
                                  const std::vector<SelectorSample> &train,
                                  const SelectorConfig &config,
                                  const TrainSchedule &schedule,
                                  const SelectorValidator &validate) {
  if (config.margin <= 0.0) throw Error("selector margin must be positive");
  SelectorTrainResult result;
  std::vector<size_t> positives, negatives;
  for (size_t i = 0; i < train.size(); ++i) {
    (train[i].positive ? positives : negatives).push_back(i);
  }
  result.positives = static_cast<int>(positives.size());
  result.negatives = static_cast<int>(negatives.size());
  if (positives.empty()) throw Error("no positive selector samples");
  size_t negatives_per_epoch = negatives.size();
  if (config.negative_ratio > 0.0) {
    negatives_per_epoch = std::min(
        negatives.size(),
        static_cast<size_t>(config.negative_ratio * positives.size()));
  }
  const size_t per_epoch = positives.size() + negatives_per_epoch;
  const size_t batch = static_cast<size_t>(std::max(1, schedule.batch_size));
  const int64_t steps_per_epoch =
      static_cast<int64_t>((per_epoch + batch - 1) / batch);
  spdlog::info("selector training: {} positives, {} negatives ({} per epoch), "
               "W+ {}",
               result.positives, result.negatives, negatives_per_epoch,
               config.positive_weight);

  Adam<float> adam(&model->params(), {schedule.lr, 0.9, 0.999, 1e-8,
                                      schedule.clip_norm});
  WarmupLinearSchedule lr_schedule(schedule.epochs * steps_per_epoch,
                                   schedule.warmup_fraction);
  std::mt19937_64 rng(schedule.seed);
  std::vector<Mat<float>> best;
  result.best_f1 = -1.0;
  int64_t step = 0;
  int stale = 0;
  model->params().ZeroGrad();
  for (int epoch = 1; epoch <= schedule.epochs; ++epoch) {
    auto start = std::chrono::steady_clock::now();
    std::shuffle(negatives.begin(), negatives.end(), rng);
    std::vector<size_t> order = positives;
    order.insert(order.end(), negatives.begin(),
                 negatives.begin() + negatives_per_epoch);
    std::shuffle(order.begin(), order.end(), rng);
    double total_loss = 0.0;
    for (size_t b = 0; b < order.size(); b += batch) {
      std::vector<ScoringInput> xs;
      std::vector<bool> labels;
      for (size_t i = b; i < std::min(order.size(), b + batch); ++i) {
        const SelectorSample &s = train[order[i]];
        xs.push_back(inputs->Build(ModelKind::kSelector, s.span, s.match));
        labels.push_back(s.positive);
      }
      std::mt19937_64 dropout_rng(schedule.seed ^
                                  (0x9e3779b97f4a7c15ULL * (step + 1)));
      total_loss += SelectorBatchLoss(*model, xs, labels, config, &dropout_rng,
                                      true) * static_cast<double>(xs.size());
      adam.Step(schedule.lr * lr_schedule.Factor(step));
      ++step;
    }
    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = total_loss / static_cast<double>(order.size());
    rec.metric = validate(*model);
    rec.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    result.history.push_back(rec);
    spdlog::info("selector epoch {}: loss {:.4f} validation F1 {:.4f} ({:.1f}s)",
                 epoch, rec.train_loss, rec.metric, rec.seconds);
    if (rec.metric > result.best_f1) {
      result.best_f1 = rec.metric;
      result.best_epoch = epoch;
      best.clear();
      for (const auto &t : model->params().tensors()) best.push_back(t.value);
      stale = 0;
    } else {
      ++stale;
    }
    if (rec.metric >= schedule.target) break;
    if (schedule.patience > 0 && stale >= schedule.patience) break;
  }
  auto &tensors = model->params().tensors();
  for (size_t i = 0; i < tensors.size(); ++i) tensors[i].value = best[i];
  return result;
}

}  // namespace medlink
