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

#ifndef MEDLINK_NN_LAYERS_H_
#define MEDLINK_NN_LAYERS_H_

#include <cstdint>
#include <deque>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace medlink {

template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using RowVec = Eigen::Matrix<T, 1, Eigen::Dynamic>;

// A named trainable tensor (stored as a matrix; vectors are 1 x n) and its
// gradient accumulator.
template <typename T>
struct Tensor {
  std::string name;
  Mat<T> value;
  Mat<T> grad;

  int64_t size() const { return value.size(); }
};

// Owns every tensor of a model. Tensor addresses are stable.
template <typename T>
class ParamSet {
 public:
  ParamSet() = default;
  ParamSet(const ParamSet &) = delete;
  ParamSet &operator=(const ParamSet &) = delete;

  Tensor<T> *Add(const std::string &name, int rows, int cols);

  std::deque<Tensor<T>> &tensors() { return tensors_; }
  const std::deque<Tensor<T>> &tensors() const { return tensors_; }
  Tensor<T> *Find(const std::string &name);
  const Tensor<T> *Find(const std::string &name) const;

  void ZeroGrad();
  int64_t NumParams() const;
  // Copies values from a set with the same layout, converting precision.
  template <typename U>
  void CopyValuesFrom(const ParamSet<U> &other);

 private:
  std::deque<Tensor<T>> tensors_;
};

// Weight initialization.
template <typename T>
void InitNormal(Tensor<T> *t, double stddev, std::mt19937_64 *rng);
template <typename T>
void InitConstant(Tensor<T> *t, double value);

// Y = X W + b with W: in x out and b: 1 x out.
template <typename T>
struct Linear {
  Tensor<T> *w = nullptr;
  Tensor<T> *b = nullptr;

  void Create(ParamSet<T> *params, const std::string &name, int in, int out);
  int in() const { return static_cast<int>(w->value.rows()); }
  int out() const { return static_cast<int>(w->value.cols()); }
  Mat<T> Forward(const Mat<T> &x) const;
  // Accumulates parameter gradients; returns dX.
  Mat<T> Backward(const Mat<T> &x, const Mat<T> &dy) const;
  // Accumulates parameter gradients only.
  void BackwardParams(const Mat<T> &x, const Mat<T> &dy) const;
};

// Row-wise layer normalization.
template <typename T>
struct LayerNorm {
  Tensor<T> *gamma = nullptr;
  Tensor<T> *beta = nullptr;
  T eps = T(1e-5);

  struct Cache {
    Mat<T> xhat;
    std::vector<T> rstd;
  };

  void Create(ParamSet<T> *params, const std::string &name, int dim, double eps);
  Mat<T> Forward(const Mat<T> &x, Cache *cache) const;
  Mat<T> Backward(const Cache &cache, const Mat<T> &dy) const;
};

// Exact (erf-based) GeLU and its derivative.
template <typename T>
T Gelu(T x);
template <typename T>
T GeluGrad(T x);
template <typename T>
Mat<T> Gelu(const Mat<T> &x);
template <typename T>
Mat<T> GeluBackward(const Mat<T> &x, const Mat<T> &dy);

// Softmax of a vector of logits (max-shifted).
template <typename T>
std::vector<T> Softmax(const std::vector<T> &logits);

}  // namespace medlink

#endif  // MEDLINK_NN_LAYERS_H_
