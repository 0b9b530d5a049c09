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

#ifndef MEDLINK_NN_ENCODER_H_
#define MEDLINK_NN_ENCODER_H_

#include <random>
#include <string>
#include <vector>

#include "medlink/base/io.h"
#include "medlink/nn/cross-input.h"
#include "medlink/nn/layers.h"

namespace medlink {

struct EncoderConfig {
  int vocab_size = 0;
  int hidden = 64;
  int layers = 2;
  int heads = 4;
  int ff = 256;
  int max_len = 128;
  double ln_eps = 1e-5;
  double init_std = 0.02;

  void Validate() const;
  json ToJson() const;
  static EncoderConfig FromJson(const json &j);
};

// Pre-norm transformer encoder over a CrossInput. Token, position and
// segment embeddings are summed, a trained marker vector is added to every
// mention piece, and the pooled output is tanh(W h_cls + b) after a final
// layer norm. Only the [CLS] row is computed in the last layer.
template <typename T>
class Encoder {
 public:
  struct LayerCache {
    Mat<T> input;          // L x H residual stream entering the layer
    typename LayerNorm<T>::Cache ln1;
    Mat<T> a;              // LN1 output, L x H
    Mat<T> q, k, v;        // nq x H, L x H, L x H
    std::vector<Mat<T>> probs;  // per head nq x L
    Mat<T> attn;           // concatenated head outputs, nq x H
    Mat<T> h1;             // after attention residual, nq x H
    typename LayerNorm<T>::Cache ln2;
    Mat<T> b;              // LN2 output
    Mat<T> f1;             // pre-activation
    Mat<T> g;              // GeLU output
  };
  struct Cache {
    std::vector<LayerCache> layers;
    typename LayerNorm<T>::Cache final_ln;
    Mat<T> cls;            // final LN output of [CLS], 1 x H
    RowVec<T> pooled;
  };

  Encoder(const EncoderConfig &config, ParamSet<T> *params,
          const std::string &prefix);

  const EncoderConfig &config() const { return config_; }

  void Init(std::mt19937_64 *rng, double stddev);

  // Pooled representation; fills the cache for Backward when non-null.
  RowVec<T> Forward(const CrossInput &input, Cache *cache) const;

  // Accumulates parameter gradients for d(loss)/d(pooled).
  void Backward(const CrossInput &input, const Cache &cache,
                const RowVec<T> &d_pooled) const;

 private:
  struct Layer {
    LayerNorm<T> ln1, ln2;
    Linear<T> wq, wk, wv, wo, ff1, ff2;
  };

  Mat<T> Embed(const CrossInput &input) const;
  Mat<T> LayerForward(const Layer &layer, const Mat<T> &x, int nq,
                      const std::vector<uint8_t> &attention,
                      LayerCache *cache) const;
  Mat<T> LayerBackward(const Layer &layer, const LayerCache &cache,
                       const Mat<T> &d_out,
                       const std::vector<uint8_t> &attention) const;

  EncoderConfig config_;
  Tensor<T> *token_emb_;
  Tensor<T> *pos_emb_;
  Tensor<T> *seg_emb_;
  Tensor<T> *marker_;
  std::vector<Layer> layers_;
  LayerNorm<T> final_ln_;
  Linear<T> pooler_;
};

}  // namespace medlink

#endif  // MEDLINK_NN_ENCODER_H_
