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

#ifndef MEDLINK_NN_SCORING_MODEL_H_
#define MEDLINK_NN_SCORING_MODEL_H_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "medlink/base/io.h"
#include "medlink/kb/alias-table.h"
#include "medlink/linker/binning.h"
#include "medlink/nn/cross-input.h"
#include "medlink/nn/encoder.h"
#include "medlink/nn/ff-head.h"
#include "medlink/nn/vocabulary.h"

namespace medlink {

enum class ModelKind : uint8_t { kLinker = 0, kSelector = 1 };

std::string_view ModelKindName(ModelKind kind);
ModelKind ParseModelKind(std::string_view name);

struct HeadConfig {
  std::vector<int> hidden = {1024, 256};
  int embedding_dim = 8;
  double dropout = 0.1;
  std::vector<double> score_bins = BinningSpec::LexicalScoreBins().boundaries();
  std::vector<double> prob_bins = BinningSpec::ProbabilityBins().boundaries();
  // Initialization scale of the embedding tables.
  double embedding_init_std = 0.02;

  json ToJson() const;
  static HeadConfig FromJson(const json &j);
};

struct ModelConfig {
  ModelKind kind = ModelKind::kLinker;
  EncoderConfig encoder;
  HeadConfig head;

  json ToJson() const;
  static ModelConfig FromJson(const json &j);
};

// Everything the scorer sees about one (span, entity) pair.
struct ScoringInput {
  CrossInput input;
  NameType name_type = NameType::kSynonym;
  double lexical_score = 0.0;  // s_e
  double linker_p = 0.0;       // p, selector only
};

// Cross-encoder plus feature embeddings and a feed-forward head. The linker
// head sees [pooled, Emb(name type), s_e, Emb(bin_S(s_e))]; the selector head
// additionally sees [p, Emb(bin_L(p))]. No parameter depends on the set of
// entities, so the alias table can be replaced without retraining.
template <typename T>
class ScoringModel {
 public:
  struct Cache {
    typename Encoder<T>::Cache encoder;
    typename FFHead<T>::Cache head;
    int score_bin = 0;
    int prob_bin = 0;
  };

  ScoringModel(const ModelConfig &config, Vocabulary vocab);
  ScoringModel(const ScoringModel &) = delete;
  ScoringModel &operator=(const ScoringModel &) = delete;

  // Random initialization: encoder_std for the encoder, the configured scale
  // for embeddings and fan-based scaling for the head.
  void Init(uint64_t seed);
  void Init(uint64_t seed, double encoder_std);

  const ModelConfig &config() const { return config_; }
  ModelKind kind() const { return config_.kind; }
  const Vocabulary &vocab() const { return vocab_; }
  ParamSet<T> &params() { return params_; }
  const ParamSet<T> &params() const { return params_; }
  int64_t NumParams() const { return params_.NumParams(); }
  int feature_dim() const;
  const BinningSpec &score_bins() const { return score_bins_; }
  const BinningSpec &prob_bins() const { return prob_bins_; }

  // dropout_rng enables training-mode dropout in the head.
  T Score(const ScoringInput &x, Cache *cache,
          std::mt19937_64 *dropout_rng = nullptr) const;
  // Accumulates gradients of d(loss)/d(score) = d_score.
  void Backward(const ScoringInput &x, const Cache &cache, T d_score) const;

 private:
  ModelConfig config_;
  Vocabulary vocab_;
  BinningSpec score_bins_;
  BinningSpec prob_bins_;
  ParamSet<T> params_;
  Encoder<T> encoder_;
  Tensor<T> *name_type_emb_;
  Tensor<T> *score_bin_emb_;
  Tensor<T> *prob_bin_emb_ = nullptr;
  FFHead<T> head_;
};

}  // namespace medlink

#endif  // MEDLINK_NN_SCORING_MODEL_H_
