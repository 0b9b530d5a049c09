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

#include "medlink/nn/layers.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "medlink/base/error.h"

namespace medlink {

template <typename T>
Tensor<T> *ParamSet<T>::Add(const std::string &name, int rows, int cols) {
  if (Find(name) != nullptr) throw Error("duplicate tensor name " + name);
  Tensor<T> t;
  t.name = name;
  t.value = Mat<T>::Zero(rows, cols);
  t.grad = Mat<T>::Zero(rows, cols);
  tensors_.push_back(std::move(t));
  return &tensors_.back();
}

template <typename T>
Tensor<T> *ParamSet<T>::Find(const std::string &name) {
  for (Tensor<T> &t : tensors_) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

template <typename T>
const Tensor<T> *ParamSet<T>::Find(const std::string &name) const {
  for (const Tensor<T> &t : tensors_) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

template <typename T>
void ParamSet<T>::ZeroGrad() {
  for (Tensor<T> &t : tensors_) t.grad.setZero();
}

template <typename T>
int64_t ParamSet<T>::NumParams() const {
  int64_t n = 0;
  for (const Tensor<T> &t : tensors_) n += t.size();
  return n;
}

template <typename T>
template <typename U>
void ParamSet<T>::CopyValuesFrom(const ParamSet<U> &other) {
  if (other.tensors().size() != tensors_.size()) {
    throw Error("parameter layouts differ");
  }
  for (size_t i = 0; i < tensors_.size(); ++i) {
    const auto &src = other.tensors()[i];
    Tensor<T> &dst = tensors_[i];
    if (src.name != dst.name || src.value.rows() != dst.value.rows() ||
        src.value.cols() != dst.value.cols()) {
      throw Error("parameter layouts differ at " + dst.name);
    }
    dst.value = src.value.template cast<T>();
  }
}

template <typename T>
void InitNormal(Tensor<T> *t, double stddev, std::mt19937_64 *rng) {
  std::normal_distribution<double> dist(0.0, stddev);
  for (int64_t i = 0; i < t->value.size(); ++i) {
    t->value.data()[i] = static_cast<T>(dist(*rng));
  }
}

template <typename T>
void InitConstant(Tensor<T> *t, double value) {
  t->value.setConstant(static_cast<T>(value));
}

template <typename T>
void Linear<T>::Create(ParamSet<T> *params, const std::string &name, int in,
                       int out) {
  w = params->Add(name + ".w", in, out);
  b = params->Add(name + ".b", 1, out);
}

template <typename T>
Mat<T> Linear<T>::Forward(const Mat<T> &x) const {
  Mat<T> y = x * w->value;
  y.rowwise() += b->value.row(0);
  return y;
}

template <typename T>
void Linear<T>::BackwardParams(const Mat<T> &x, const Mat<T> &dy) const {
  w->grad.noalias() += x.transpose() * dy;
  b->grad.row(0) += dy.colwise().sum();
}

template <typename T>
Mat<T> Linear<T>::Backward(const Mat<T> &x, const Mat<T> &dy) const {
  BackwardParams(x, dy);
  return dy * w->value.transpose();
}

template <typename T>
void LayerNorm<T>::Create(ParamSet<T> *params, const std::string &name, int dim,
                          double epsilon) {
  gamma = params->Add(name + ".gamma", 1, dim);
  beta = params->Add(name + ".beta", 1, dim);
  InitConstant(gamma, 1.0);
  eps = static_cast<T>(epsilon);
}

template <typename T>
Mat<T> LayerNorm<T>::Forward(const Mat<T> &x, Cache *cache) const {
  const int n = static_cast<int>(x.cols());
  Mat<T> xhat(x.rows(), n);
  std::vector<T> rstd(x.rows());
  for (int r = 0; r < x.rows(); ++r) {
    T mean = x.row(r).mean();
    auto centered = x.row(r).array() - mean;
    T var = centered.square().sum() / static_cast<T>(n);
    rstd[r] = T(1) / std::sqrt(var + eps);
    xhat.row(r) = centered * rstd[r];
  }
  Mat<T> y = xhat.array().rowwise() * gamma->value.row(0).array();
  y.rowwise() += beta->value.row(0);
  if (cache != nullptr) {
    cache->xhat = std::move(xhat);
    cache->rstd = std::move(rstd);
  }
  return y;
}

template <typename T>
Mat<T> LayerNorm<T>::Backward(const Cache &cache, const Mat<T> &dy) const {
  const T n = static_cast<T>(dy.cols());
  gamma->grad.row(0) += (dy.array() * cache.xhat.array()).colwise().sum().matrix();
  beta->grad.row(0) += dy.colwise().sum();
  Mat<T> dxhat = dy.array().rowwise() * gamma->value.row(0).array();
  Mat<T> dx(dy.rows(), dy.cols());
  for (int r = 0; r < dy.rows(); ++r) {
    T mean_d = dxhat.row(r).sum() / n;
    T mean_dx = dxhat.row(r).dot(cache.xhat.row(r)) / n;
    dx.row(r) = (dxhat.row(r).array() - mean_d -
                 cache.xhat.row(r).array() * mean_dx) *
                cache.rstd[r];
  }
  return dx;
}

template <typename T>
T Gelu(T x) {
  return T(0.5) * x * (T(1) + std::erf(x / std::sqrt(T(2))));
}

template <typename T>
T GeluGrad(T x) {
  const T kInvSqrt2Pi = T(0.3989422804014327);
  return T(0.5) * (T(1) + std::erf(x / std::sqrt(T(2)))) +
         x * kInvSqrt2Pi * std::exp(T(-0.5) * x * x);
}

template <typename T>
Mat<T> Gelu(const Mat<T> &x) {
  return x.unaryExpr([](T v) { return Gelu(v); });
}

template <typename T>
Mat<T> GeluBackward(const Mat<T> &x, const Mat<T> &dy) {
  return dy.cwiseProduct(x.unaryExpr([](T v) { return GeluGrad(v); }));
}

template <typename T>
std::vector<T> Softmax(const std::vector<T> &logits) {
  std::vector<T> p(logits.size());
  if (logits.empty()) return p;
  T max = *std::max_element(logits.begin(), logits.end());
  T sum = 0;
  for (size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::isinf(logits[i]) && logits[i] < 0 ? T(0)
                                                  : std::exp(logits[i] - max);
    sum += p[i];
  }
  for (T &v : p) v /= sum;
  return p;
}

#define MEDLINK_INSTANTIATE_LAYERS(T)                                     \
  template class ParamSet<T>;                                             \
  template void InitNormal<T>(Tensor<T> *, double, std::mt19937_64 *);    \
  template void InitConstant<T>(Tensor<T> *, double);                     \
  template struct Linear<T>;                                              \
  template struct LayerNorm<T>;                                           \
  template T Gelu<T>(T);                                                  \
  template T GeluGrad<T>(T);                                              \
  template Mat<T> Gelu<T>(const Mat<T> &);                                \
  template Mat<T> GeluBackward<T>(const Mat<T> &, const Mat<T> &);        \
  template std::vector<T> Softmax<T>(const std::vector<T> &);

MEDLINK_INSTANTIATE_LAYERS(float)
MEDLINK_INSTANTIATE_LAYERS(double)

template void ParamSet<float>::CopyValuesFrom<float>(const ParamSet<float> &);
template void ParamSet<float>::CopyValuesFrom<double>(const ParamSet<double> &);
template void ParamSet<double>::CopyValuesFrom<float>(const ParamSet<float> &);
template void ParamSet<double>::CopyValuesFrom<double>(const ParamSet<double> &);

}  // namespace medlink
