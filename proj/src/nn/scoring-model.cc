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

#include "medlink/nn/scoring-model.h"

#include "medlink/base/error.h"

namespace medlink {

namespace {

int FeatureDim(const ModelConfig &c) {
  int d = c.encoder.hidden + c.head.embedding_dim + 1 + c.head.embedding_dim;
  if (c.kind == ModelKind::kSelector) d += 1 + c.head.embedding_dim;
  return d;
}

EncoderConfig WithVocab(EncoderConfig c, const Vocabulary &vocab) {
  c.vocab_size = vocab.size();
  return c;
}

}  // namespace

std::string_view ModelKindName(ModelKind kind) {
  return kind == ModelKind::kLinker ? "linker" : "selector";
}

ModelKind ParseModelKind(std::string_view name) {
  if (name == "linker") return ModelKind::kLinker;
  if (name == "selector") return ModelKind::kSelector;
  throw Error("unknown model kind: " + std::string(name));
}

json HeadConfig::ToJson() const {
  return json{{"hidden", hidden},
              {"embedding_dim", embedding_dim},
              {"dropout", dropout},
              {"score_bins", score_bins},
              {"prob_bins", prob_bins},
              {"embedding_init_std", embedding_init_std}};
}

HeadConfig HeadConfig::FromJson(const json &j) {
  HeadConfig c;
  c.hidden = j.at("hidden").get<std::vector<int>>();
  c.embedding_dim = j.at("embedding_dim").get<int>();
  c.dropout = j.at("dropout").get<double>();
  c.score_bins = j.at("score_bins").get<std::vector<double>>();
  c.prob_bins = j.at("prob_bins").get<std::vector<double>>();
  c.embedding_init_std = j.value("embedding_init_std", 0.02);
  return c;
}

json ModelConfig::ToJson() const {
  return json{{"kind", std::string(ModelKindName(kind))},
              {"encoder", encoder.ToJson()},
              {"head", head.ToJson()}};
}

ModelConfig ModelConfig::FromJson(const json &j) {
  ModelConfig c;
  c.kind = ParseModelKind(j.at("kind").get<std::string>());
  c.encoder = EncoderConfig::FromJson(j.at("encoder"));
  c.head = HeadConfig::FromJson(j.at("head"));
  return c;
}

template <typename T>
ScoringModel<T>::ScoringModel(const ModelConfig &config, Vocabulary vocab)
    : config_(config),
      vocab_(std::move(vocab)),
      score_bins_(config.head.score_bins),
      prob_bins_(config.head.prob_bins),
      encoder_(WithVocab(config.encoder, vocab_), &params_, "encoder."),
      name_type_emb_(params_.Add("emb.name_type", kNumNameTypes,
                                 config.head.embedding_dim)),
      score_bin_emb_(params_.Add("emb.score_bin", score_bins_.num_bins(),
                                 config.head.embedding_dim)),
      prob_bin_emb_(config.kind == ModelKind::kSelector
                        ? params_.Add("emb.prob_bin", prob_bins_.num_bins(),
                                      config.head.embedding_dim)
                        : nullptr),
      head_(FeatureDim(config), config.head.hidden, config.head.dropout,
            &params_, "head.") {
  config_.encoder.vocab_size = vocab_.size();
  if (config.head.embedding_dim <= 0) throw Error("invalid embedding size");
}

template <typename T>
int ScoringModel<T>::feature_dim() const {
  return FeatureDim(config_);
}

template <typename T>
void ScoringModel<T>::Init(uint64_t seed) {
  Init(seed, config_.encoder.init_std);
}

template <typename T>
void ScoringModel<T>::Init(uint64_t seed, double encoder_std) {
  std::mt19937_64 rng(seed);
  encoder_.Init(&rng, encoder_std);
  double emb_std = config_.head.embedding_init_std;
  InitNormal(name_type_emb_, emb_std, &rng);
  InitNormal(score_bin_emb_, emb_std, &rng);
  if (prob_bin_emb_ != nullptr) InitNormal(prob_bin_emb_, emb_std, &rng);
  head_.Init(&rng);
}

template <typename T>
T ScoringModel<T>::Score(const ScoringInput &x, Cache *cache,
                         std::mt19937_64 *dropout_rng) const {
  const int h = config_.encoder.hidden;
  const int e = config_.head.embedding_dim;
  RowVec<T> features(feature_dim());
  features.head(h) = encoder_.Forward(
      x.input, cache != nullptr ? &cache->encoder : nullptr);
  int pos = h;
  features.segment(pos, e) =
      name_type_emb_->value.row(static_cast<int>(x.name_type));
  pos += e;
  features(pos++) = static_cast<T>(x.lexical_score);
  int score_bin = score_bins_.Index(x.lexical_score);
  features.segment(pos, e) = score_bin_emb_->value.row(score_bin);
  pos += e;
  int prob_bin = 0;
  if (prob_bin_emb_ != nullptr) {
    features(pos++) = static_cast<T>(x.linker_p);
    prob_bin = prob_bins_.Index(x.linker_p);
    features.segment(pos, e) = prob_bin_emb_->value.row(prob_bin);
    pos += e;
  }
  if (cache != nullptr) {
    cache->score_bin = score_bin;
    cache->prob_bin = prob_bin;
  }
  return head_.Forward(features, cache != nullptr ? &cache->head : nullptr,
                       dropout_rng);
}

template <typename T>
void ScoringModel<T>::Backward(const ScoringInput &x, const Cache &cache,
                               T d_score) const {
  const int h = config_.encoder.hidden;
  const int e = config_.head.embedding_dim;
  RowVec<T> d = head_.Backward(cache.head, d_score);
  int pos = h;
  name_type_emb_->grad.row(static_cast<int>(x.name_type)) += d.segment(pos, e);
  pos += e + 1;
  score_bin_emb_->grad.row(cache.score_bin) += d.segment(pos, e);
  pos += e;
  if (prob_bin_emb_ != nullptr) {
    pos += 1;
    prob_bin_emb_->grad.row(cache.prob_bin) += d.segment(pos, e);
  }
  encoder_.Backward(x.input, cache.encoder, d.head(h));
}

template class ScoringModel<float>;
template class ScoringModel<double>;

}  // namespace medlink
