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

#include "medlink/nn/encoder.h"

#include <cmath>

#include "medlink/base/error.h"

namespace medlink {

void EncoderConfig::Validate() const {
  if (vocab_size <= Vocabulary::kNumSpecial) throw Error("encoder: empty vocabulary");
  if (hidden <= 0 || layers <= 0 || heads <= 0 || ff <= 0 || max_len < 5) {
    throw Error("encoder: invalid dimensions");
  }
  if (hidden % heads != 0) throw Error("encoder: hidden must divide by heads");
}

json EncoderConfig::ToJson() const {
  return json{{"vocab_size", vocab_size}, {"hidden", hidden},
              {"layers", layers},         {"heads", heads},
              {"ff", ff},                 {"max_len", max_len},
              {"ln_eps", ln_eps},         {"init_std", init_std}};
}

EncoderConfig EncoderConfig::FromJson(const json &j) {
  EncoderConfig c;
  c.vocab_size = j.at("vocab_size").get<int>();
  c.hidden = j.at("hidden").get<int>();
  c.layers = j.at("layers").get<int>();
  c.heads = j.at("heads").get<int>();
  c.ff = j.at("ff").get<int>();
  c.max_len = j.at("max_len").get<int>();
  c.ln_eps = j.at("ln_eps").get<double>();
  c.init_std = j.value("init_std", 0.02);
  return c;
}

template <typename T>
Encoder<T>::Encoder(const EncoderConfig &config, ParamSet<T> *params,
                    const std::string &prefix)
    : config_(config) {
  config_.Validate();
  const int h = config_.hidden;
  token_emb_ = params->Add(prefix + "token_emb", config_.vocab_size, h);
  pos_emb_ = params->Add(prefix + "pos_emb", config_.max_len, h);
  seg_emb_ = params->Add(prefix + "seg_emb", 2, h);
  marker_ = params->Add(prefix + "mention_marker", 1, h);
  layers_.resize(config_.layers);
  for (int l = 0; l < config_.layers; ++l) {
    std::string p = prefix + "layer" + std::to_string(l) + ".";
    Layer &layer = layers_[l];
    layer.ln1.Create(params, p + "ln1", h, config_.ln_eps);
    layer.wq.Create(params, p + "query", h, h);
    layer.wk.Create(params, p + "key", h, h);
    layer.wv.Create(params, p + "value", h, h);
    layer.wo.Create(params, p + "attn_out", h, h);
    layer.ln2.Create(params, p + "ln2", h, config_.ln_eps);
    layer.ff1.Create(params, p + "ff1", h, config_.ff);
    layer.ff2.Create(params, p + "ff2", config_.ff, h);
  }
  final_ln_.Create(params, prefix + "final_ln", h, config_.ln_eps);
  pooler_.Create(params, prefix + "pooler", h, h);
}

template <typename T>
void Encoder<T>::Init(std::mt19937_64 *rng, double stddev) {
  InitNormal(token_emb_, stddev, rng);
  InitNormal(pos_emb_, stddev, rng);
  InitNormal(seg_emb_, stddev, rng);
  InitNormal(marker_, stddev, rng);
  for (Layer &layer : layers_) {
    for (Linear<T> *lin : {&layer.wq, &layer.wk, &layer.wv, &layer.wo,
                           &layer.ff1, &layer.ff2}) {
      InitNormal(lin->w, stddev, rng);
      InitConstant(lin->b, 0.0);
    }
  }
  InitNormal(pooler_.w, stddev, rng);
  InitConstant(pooler_.b, 0.0);
}

template <typename T>
Mat<T> Encoder<T>::Embed(const CrossInput &input) const {
  const int n = input.size();
  if (n > config_.max_len) throw Error("encoder: input longer than max_len");
  Mat<T> x(n, config_.hidden);
  for (int i = 0; i < n; ++i) {
    int32_t id = input.ids[i];
    if (id < 0 || id >= config_.vocab_size) {
      throw Error("encoder: token id out of range: " + std::to_string(id));
    }
    x.row(i) = token_emb_->value.row(id) + pos_emb_->value.row(i) +
               seg_emb_->value.row(input.segments[i]);
    if (input.mention_mask[i]) x.row(i) += marker_->value.row(0);
  }
  return x;
}

template <typename T>
Mat<T> Encoder<T>::LayerForward(const Layer &layer, const Mat<T> &x, int nq,
                                const std::vector<uint8_t> &attention,
                                LayerCache *cache) const {
  const int n = static_cast<int>(x.rows());
  const int heads = config_.heads;
  const int dh = config_.hidden / heads;
  const T scale = T(1) / std::sqrt(static_cast<T>(dh));

  typename LayerNorm<T>::Cache ln1;
  Mat<T> a = layer.ln1.Forward(x, &ln1);
  Mat<T> q = layer.wq.Forward(a.topRows(nq));
  Mat<T> k = layer.wk.Forward(a);
  Mat<T> v = layer.wv.Forward(a);
  Mat<T> attn(nq, config_.hidden);
  std::vector<Mat<T>> probs(heads);
  for (int hd = 0; hd < heads; ++hd) {
    Mat<T> s = q.middleCols(hd * dh, dh) * k.middleCols(hd * dh, dh).transpose();
    Mat<T> p(nq, n);
    for (int r = 0; r < nq; ++r) {
      T max = -std::numeric_limits<T>::infinity();
      for (int c = 0; c < n; ++c) {
        if (attention[c]) max = std::max(max, s(r, c) * scale);
      }
      T sum = 0;
      for (int c = 0; c < n; ++c) {
        p(r, c) = attention[c] ? std::exp(s(r, c) * scale - max) : T(0);
        sum += p(r, c);
      }
      p.row(r) /= sum;
    }
    attn.middleCols(hd * dh, dh) = p * v.middleCols(hd * dh, dh);
    probs[hd] = std::move(p);
  }
  Mat<T> h1 = x.topRows(nq) + layer.wo.Forward(attn);
  typename LayerNorm<T>::Cache ln2;
  Mat<T> b = layer.ln2.Forward(h1, &ln2);
  Mat<T> f1 = layer.ff1.Forward(b);
  Mat<T> g = Gelu(f1);
  Mat<T> out = h1 + layer.ff2.Forward(g);
  if (cache != nullptr) {
    cache->input = x;
    cache->ln1 = std::move(ln1);
    cache->a = std::move(a);
    cache->q = std::move(q);
    cache->k = std::move(k);
    cache->v = std::move(v);
    cache->probs = std::move(probs);
    cache->attn = std::move(attn);
    cache->h1 = std::move(h1);
    cache->ln2 = std::move(ln2);
    cache->b = std::move(b);
    cache->f1 = std::move(f1);
    cache->g = std::move(g);
  }
  return out;
}

template <typename T>
RowVec<T> Encoder<T>::Forward(const CrossInput &input, Cache *cache) const {
  if (input.size() == 0) throw Error("encoder: empty input");
  Mat<T> x = Embed(input);
  if (cache != nullptr) cache->layers.resize(layers_.size());
  for (size_t l = 0; l < layers_.size(); ++l) {
    int nq = l + 1 == layers_.size() ? 1 : input.size();
    x = LayerForward(layers_[l], x, nq, input.attention_mask,
                     cache != nullptr ? &cache->layers[l] : nullptr);
  }
  typename LayerNorm<T>::Cache final_ln;
  Mat<T> cls = final_ln_.Forward(x.topRows(1), &final_ln);
  RowVec<T> pooled = pooler_.Forward(cls).row(0).array().tanh().matrix();
  if (cache != nullptr) {
    cache->final_ln = std::move(final_ln);
    cache->cls = std::move(cls);
    cache->pooled = pooled;
  }
  return pooled;
}

template <typename T>
Mat<T> Encoder<T>::LayerBackward(const Layer &layer, const LayerCache &c,
                                 const Mat<T> &d_out,
                                 const std::vector<uint8_t> &attention) const {
  const int n = static_cast<int>(c.input.rows());
  const int nq = static_cast<int>(d_out.rows());
  const int heads = config_.heads;
  const int dh = config_.hidden / heads;
  const T scale = T(1) / std::sqrt(static_cast<T>(dh));

  // Feed-forward block.
  Mat<T> dh1 = d_out;
  Mat<T> dg = layer.ff2.Backward(c.g, d_out);
  Mat<T> df1 = GeluBackward(c.f1, dg);
  Mat<T> db = layer.ff1.Backward(c.b, df1);
  dh1 += layer.ln2.Backward(c.ln2, db);

  // Attention block.
  Mat<T> dx = Mat<T>::Zero(n, config_.hidden);
  dx.topRows(nq) += dh1;
  Mat<T> dattn = layer.wo.Backward(c.attn, dh1);
  Mat<T> dq(nq, config_.hidden);
  Mat<T> dk = Mat<T>::Zero(n, config_.hidden);
  Mat<T> dv = Mat<T>::Zero(n, config_.hidden);
  for (int hd = 0; hd < heads; ++hd) {
    const Mat<T> &p = c.probs[hd];
    Mat<T> dattn_h = dattn.middleCols(hd * dh, dh);
    Mat<T> dp = dattn_h * c.v.middleCols(hd * dh, dh).transpose();
    dv.middleCols(hd * dh, dh) += p.transpose() * dattn_h;
    Mat<T> ds(nq, n);
    for (int r = 0; r < nq; ++r) {
      T dot = p.row(r).dot(dp.row(r));
      for (int col = 0; col < n; ++col) {
        ds(r, col) = attention[col] ? p(r, col) * (dp(r, col) - dot) * scale
                                    : T(0);
      }
    }
    dq.middleCols(hd * dh, dh) = ds * c.k.middleCols(hd * dh, dh);
    dk.middleCols(hd * dh, dh) += ds.transpose() * c.q.middleCols(hd * dh, dh);
  }
  Mat<T> da = layer.wk.Backward(c.a, dk);
  da += layer.wv.Backward(c.a, dv);
  da.topRows(nq) += layer.wq.Backward(c.a.topRows(nq), dq);
  dx += layer.ln1.Backward(c.ln1, da);
  return dx;
}

template <typename T>
void Encoder<T>::Backward(const CrossInput &input, const Cache &cache,
                          const RowVec<T> &d_pooled) const {
  RowVec<T> dz =
      d_pooled.array() * (T(1) - cache.pooled.array().square());
  Mat<T> dz_m = dz;
  Mat<T> dcls = pooler_.Backward(cache.cls, dz_m);
  Mat<T> dx = final_ln_.Backward(cache.final_ln, dcls);
  for (int l = static_cast<int>(layers_.size()) - 1; l >= 0; --l) {
    dx = LayerBackward(layers_[l], cache.layers[l], dx, input.attention_mask);
  }
  for (int i = 0; i < input.size(); ++i) {
    token_emb_->grad.row(input.ids[i]) += dx.row(i);
    pos_emb_->grad.row(i) += dx.row(i);
    seg_emb_->grad.row(input.segments[i]) += dx.row(i);
    if (input.mention_mask[i]) marker_->grad.row(0) += dx.row(i);
  }
}

template class Encoder<float>;
template class Encoder<double>;

}  // namespace medlink
