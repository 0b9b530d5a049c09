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

#include "medlink/linker/linker.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include <spdlog/spdlog.h>

#include "medlink/base/error.h"
#include "medlink/nn/adam.h"

namespace medlink {

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

// Candidate order after linking: p descending, then lexical score
// descending, then entity id.
bool LinkedOrder(const LexicalMatch &a, const LexicalMatch &b) {
  double pa = a.p.value_or(0.0), pb = b.p.value_or(0.0);
  if (pa != pb) return pa > pb;
  if (a.score != b.score) return a.score > b.score;
  return a.entity_id < b.entity_id;
}

std::vector<double> Logits(const ScoringModel<float> &model,
                           InputBuilder *inputs, const CandidateSpan &span,
                           const std::vector<LexicalMatch> &matches) {
  std::vector<double> logits;
  logits.reserve(matches.size());
  for (const LexicalMatch &m : matches) {
    ScoringInput x = inputs->Build(ModelKind::kLinker, span, m);
    logits.push_back(model.Score(x, nullptr));
  }
  return logits;
}

}  // namespace

InputBuilder::InputBuilder(const Vocabulary *vocab, const AliasTable *table,
                           int max_len)
    : vocab_(vocab), table_(table), max_len_(max_len) {}

void InputBuilder::AddDocuments(const std::vector<Document> &docs) {
  for (const Document &d : docs) {
    docs_[d.id] = &d;
    pieces_.erase(d.id);
  }
}

const Document &InputBuilder::doc(const std::string &id) const {
  auto it = docs_.find(id);
  if (it == docs_.end()) throw Error("unknown document " + id);
  return *it->second;
}

std::string InputBuilder::EntityText(ModelKind kind,
                                     const LexicalMatch &match) const {
  if (kind == ModelKind::kLinker && table_->HasEntity(match.entity_id)) {
    return table_->LinkerText(match.entity_id);
  }
  AliasEntry alias;
  alias.name = match.alias;
  alias.entity_id = match.entity_id;
  alias.type = {match.type_id, match.type_name};
  alias.name_type = match.name_type;
  if (kind == ModelKind::kLinker) {
    return alias.type.name + " , " + alias.name;
  }
  return table_->SelectorText(alias);
}

ScoringInput InputBuilder::Build(ModelKind kind, const CandidateSpan &span,
                                 const LexicalMatch &match) {
  const Document &d = doc(span.doc_id);
  auto pit = pieces_.find(span.doc_id);
  if (pit == pieces_.end()) {
    pit = pieces_.emplace(span.doc_id, DocumentPieces::Build(d, *vocab_)).first;
  }
  std::string text = EntityText(kind, match);
  auto tit = text_ids_.find(text);
  if (tit == text_ids_.end()) {
    tit = text_ids_.emplace(text, vocab_->Encode(text)).first;
  }
  if (span.sentence < 0 || span.sentence >= static_cast<int>(d.sentences.size())) {
    throw Error("span sentence out of range in document " + span.doc_id);
  }
  int base = d.sentences[span.sentence].begin;
  ScoringInput x;
  x.input = BuildCrossInput(pit->second, base + span.start, base + span.end,
                            tit->second, max_len_);
  x.name_type = match.name_type;
  x.lexical_score = match.score;
  x.linker_p = match.p.value_or(0.0);
  return x;
}

std::vector<double> LinkerDistribution(const std::vector<double> &logits) {
  return Softmax(logits);
}

template <typename T>
double LinkerLoss(const ScoringModel<T> &model,
                  const std::vector<ScoringInput> &candidates, int gold,
                  std::mt19937_64 *dropout_rng, bool compute_grad) {
  if (gold < 0 || gold >= static_cast<int>(candidates.size())) {
    throw Error("gold candidate index out of range");
  }
  std::vector<typename ScoringModel<T>::Cache> caches(
      compute_grad ? candidates.size() : 0);
  std::vector<T> logits;
  for (size_t i = 0; i < candidates.size(); ++i) {
    logits.push_back(model.Score(candidates[i],
                                 compute_grad ? &caches[i] : nullptr,
                                 dropout_rng));
  }
  std::vector<T> p = Softmax(logits);
  T max = *std::max_element(logits.begin(), logits.end());
  T sum = 0;
  for (T l : logits) sum += std::exp(l - max);
  double loss = -static_cast<double>(logits[gold] - max - std::log(sum));
  if (compute_grad) {
    for (size_t i = 0; i < candidates.size(); ++i) {
      T d = p[i] - (static_cast<int>(i) == gold ? T(1) : T(0));
      model.Backward(candidates[i], caches[i], d);
    }
  }
  return loss;
}

template double LinkerLoss<float>(const ScoringModel<float> &,
                                  const std::vector<ScoringInput> &, int,
                                  std::mt19937_64 *, bool);
template double LinkerLoss<double>(const ScoringModel<double> &,
                                   const std::vector<ScoringInput> &, int,
                                   std::mt19937_64 *, bool);

std::vector<LinkerExample> MakeLinkerExamples(
    const std::vector<Document> &docs, const LexicalMatcher &matcher, int k_m) {
  std::vector<LinkerExample> examples;
  for (SpanCandidates &sc : GenerateGoldSpanCandidates(docs, matcher, k_m)) {
    LinkerExample ex;
    ex.span = std::move(sc.span);
    ex.matches = std::move(sc.matches);
    examples.push_back(std::move(ex));
  }
  size_t k = 0;
  for (const Document &doc : docs) {
    for (const Mention &m : doc.mentions) {
      LinkerExample &ex = examples[k++];
      ex.gold_entity = m.entity_id;
      for (size_t i = 0; i < ex.matches.size(); ++i) {
        if (ex.matches[i].entity_id == m.entity_id) {
          ex.gold = static_cast<int>(i);
          break;
        }
      }
    }
  }
  return examples;
}

double LinkerRecallAt1(const ScoringModel<float> &model, InputBuilder *inputs,
                       const std::vector<LinkerExample> &examples) {
  if (examples.empty()) return 0.0;
  int hits = 0;
  for (const LinkerExample &ex : examples) {
    if (ex.gold < 0) continue;
    std::vector<double> p =
        LinkerDistribution(Logits(model, inputs, ex.span, ex.matches));
    std::vector<LexicalMatch> ranked = ex.matches;
    for (size_t i = 0; i < ranked.size(); ++i) ranked[i].p = p[i];
    auto best = std::min_element(ranked.begin(), ranked.end(), LinkedOrder);
    if (best->entity_id == ex.gold_entity) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(examples.size());
}

LinkerTrainResult TrainLinker(ScoringModel<float> *model, InputBuilder *inputs,
                              const std::vector<LinkerExample> &train,
                              const std::vector<LinkerExample> &valid,
                              const TrainSchedule &schedule) {
  LinkerTrainResult result;
  std::vector<size_t> trainable;
  for (size_t i = 0; i < train.size(); ++i) {
    if (train[i].gold >= 0) {
      trainable.push_back(i);
    } else {
      ++result.excluded;
    }
  }
  result.trainable = static_cast<int>(trainable.size());
  if (trainable.empty()) throw Error("no trainable linker mentions");
  spdlog::info("linker training: {} mentions, {} excluded (gold not retrieved)",
               result.trainable, result.excluded);

  const auto &eval_set = valid.empty() ? train : valid;
  Adam<float> adam(&model->params(), {schedule.lr, 0.9, 0.999, 1e-8,
                                      schedule.clip_norm});
  WarmupLinearSchedule lr_schedule(
      static_cast<int64_t>(schedule.epochs) * result.trainable,
      schedule.warmup_fraction);
  std::mt19937_64 shuffle_rng(schedule.seed);
  std::vector<Mat<float>> best;
  result.best_recall = -1.0;
  int64_t step = 0;
  int stale = 0;
  model->params().ZeroGrad();
  for (int epoch = 1; epoch <= schedule.epochs; ++epoch) {
    auto start = Clock::now();
    std::shuffle(trainable.begin(), trainable.end(), shuffle_rng);
    double total_loss = 0.0;
    for (size_t idx : trainable) {
      const LinkerExample &ex = train[idx];
      std::vector<ScoringInput> xs;
      for (const LexicalMatch &m : ex.matches) {
        xs.push_back(inputs->Build(ModelKind::kLinker, ex.span, m));
      }
      std::mt19937_64 dropout_rng(schedule.seed ^ (0x9e3779b97f4a7c15ULL * (step + 1)));
      total_loss += LinkerLoss(*model, xs, ex.gold, &dropout_rng, true);
      adam.Step(schedule.lr * lr_schedule.Factor(step));
      ++step;
    }
    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = total_loss / static_cast<double>(trainable.size());
    rec.metric = LinkerRecallAt1(*model, inputs, eval_set);
    rec.seconds = Seconds(start);
    result.history.push_back(rec);
    spdlog::info("linker epoch {}: loss {:.4f} recall@1 {:.4f} ({:.1f}s)",
                 epoch, rec.train_loss, rec.metric, rec.seconds);
    if (rec.metric > result.best_recall) {
      result.best_recall = rec.metric;
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

void LinkSpans(const ScoringModel<float> &model, InputBuilder *inputs,
               std::vector<SpanCandidates> *spans, int k_l) {
  if (k_l < 1) throw Error("K_L must be at least 1");
  for (SpanCandidates &sc : *spans) {
    if (sc.matches.empty()) continue;
    std::vector<double> p =
        LinkerDistribution(Logits(model, inputs, sc.span, sc.matches));
    for (size_t i = 0; i < sc.matches.size(); ++i) sc.matches[i].p = p[i];
    std::sort(sc.matches.begin(), sc.matches.end(), LinkedOrder);
    if (static_cast<int>(sc.matches.size()) > k_l) sc.matches.resize(k_l);
  }
}

}  // namespace medlink
