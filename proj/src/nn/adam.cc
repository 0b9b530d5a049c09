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

#include "medlink/nn/adam.h"

#include <algorithm>
#include <cmath>

#include "medlink/base/error.h"

namespace medlink {

WarmupLinearSchedule::WarmupLinearSchedule(int64_t total_steps,
                                           double warmup_fraction)
    : total_(std::max<int64_t>(total_steps, 1)),
      warmup_(static_cast<int64_t>(warmup_fraction * total_steps)) {}

double WarmupLinearSchedule::Factor(int64_t step) const {
  if (step < warmup_) return static_cast<double>(step + 1) / static_cast<double>(warmup_);
  if (step >= total_) return 0.0;
  return static_cast<double>(total_ - step) /
         static_cast<double>(std::max<int64_t>(total_ - warmup_, 1));
}

template <typename T>
Adam<T>::Adam(ParamSet<T> *params, const AdamConfig &config)
    : params_(params), config_(config) {
  for (const Tensor<T> &t : params_->tensors()) {
    m_.push_back(Mat<T>::Zero(t.value.rows(), t.value.cols()));
    v_.push_back(Mat<T>::Zero(t.value.rows(), t.value.cols()));
  }
}

template <typename T>
double Adam<T>::Step(double lr) {
  auto &tensors = params_->tensors();
  if (tensors.size() != m_.size()) throw Error("optimizer state mismatch");
  double sq = 0.0;
  for (const Tensor<T> &t : tensors) {
    sq += static_cast<double>(t.grad.squaredNorm());
  }
  double norm = std::sqrt(sq);
  double clip = 1.0;
  if (config_.clip_norm > 0.0 && norm > config_.clip_norm) {
    clip = config_.clip_norm / norm;
  }
  ++steps_;
  const double b1 = config_.beta1, b2 = config_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(steps_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(steps_));
  const T step = static_cast<T>(lr * std::sqrt(c2) / c1);
  const T eps = static_cast<T>(config_.eps * std::sqrt(c2));
  for (size_t i = 0; i < tensors.size(); ++i) {
    Tensor<T> &t = tensors[i];
    auto g = (t.grad.array() * static_cast<T>(clip));
    m_[i].array() = static_cast<T>(b1) * m_[i].array() +
                    static_cast<T>(1 - b1) * g;
    v_[i].array() = static_cast<T>(b2) * v_[i].array() +
                    static_cast<T>(1 - b2) * g.square();
    t.value.array() -= step * m_[i].array() / (v_[i].array().sqrt() + eps);
    t.grad.setZero();
  }
  return norm;
}

template class Adam<float>;
template class Adam<double>;

}  // namespace medlink
