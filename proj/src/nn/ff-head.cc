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

#include "medlink/nn/ff-head.h"

#include <cmath>

#include "medlink/base/error.h"

namespace medlink {

template <typename T>
FFHead<T>::FFHead(int in, const std::vector<int> &hidden, double dropout,
                  ParamSet<T> *params, const std::string &prefix)
    : in_(in), dropout_(dropout) {
  if (in <= 0 || dropout < 0.0 || dropout >= 1.0) {
    throw Error("invalid feed-forward head settings");
  }
  int prev = in;
  for (size_t i = 0; i <= hidden.size(); ++i) {
    int out = i < hidden.size() ? hidden[i] : 1;
    if (out <= 0) throw Error("invalid feed-forward hidden size");
    layers_.emplace_back();
    layers_.back().Create(params, prefix + "fc" + std::to_string(i), prev, out);
    prev = out;
  }
}

template <typename T>
void FFHead<T>::Init(std::mt19937_64 *rng) {
  for (Linear<T> &layer : layers_) {
    InitNormal(layer.w, std::sqrt(2.0 / (layer.in() + layer.out())), rng);
    InitConstant(layer.b, 0.0);
  }
}

template <typename T>
T FFHead<T>::Forward(const RowVec<T> &x, Cache *cache,
                     std::mt19937_64 *dropout_rng) const {
  if (x.size() != in_) throw Error("feed-forward head: input size mismatch");
  Mat<T> h = x;
  std::vector<uint8_t> keep;
  if (dropout_rng != nullptr && dropout_ > 0.0) {
    std::bernoulli_distribution drop(dropout_);
    keep.resize(in_);
    T scale = static_cast<T>(1.0 / (1.0 - dropout_));
    for (int i = 0; i < in_; ++i) {
      keep[i] = drop(*dropout_rng) ? 0 : 1;
      h(0, i) = keep[i] ? h(0, i) * scale : T(0);
    }
  }
  if (cache != nullptr) {
    cache->inputs.clear();
    cache->pre.clear();
    cache->keep = std::move(keep);
  }
  for (size_t i = 0; i < layers_.size(); ++i) {
    if (cache != nullptr) cache->inputs.push_back(h);
    Mat<T> z = layers_[i].Forward(h);
    if (i + 1 < layers_.size()) {
      h = Gelu(z);
      if (cache != nullptr) cache->pre.push_back(std::move(z));
    } else {
      h = std::move(z);
    }
  }
  return h(0, 0);
}

template <typename T>
RowVec<T> FFHead<T>::Backward(const Cache &cache, T d_out) const {
  Mat<T> d = Mat<T>::Constant(1, 1, d_out);
  for (int i = static_cast<int>(layers_.size()) - 1; i >= 0; --i) {
    if (i + 1 < static_cast<int>(layers_.size())) {
      d = GeluBackward(cache.pre[i], d);
    }
    d = layers_[i].Backward(cache.inputs[i], d);
  }
  RowVec<T> dx = d.row(0);
  if (!cache.keep.empty()) {
    T scale = static_cast<T>(1.0 / (1.0 - dropout_));
    for (int i = 0; i < in_; ++i) dx(i) = cache.keep[i] ? dx(i) * scale : T(0);
  }
  return dx;
}

template class FFHead<float>;
template class FFHead<double>;

}  // namespace medlink
