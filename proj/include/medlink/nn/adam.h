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

#ifndef MEDLINK_NN_ADAM_H_
#define MEDLINK_NN_ADAM_H_

#include <cstdint>
#include <vector>

#include "medlink/nn/layers.h"

namespace medlink {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  // Global gradient-norm clipping; <= 0 disables.
  double clip_norm = 1.0;
};

// Linear warmup over the first warmup_fraction of the steps, then linear
// decay to zero at total_steps.
class WarmupLinearSchedule {
 public:
  WarmupLinearSchedule(int64_t total_steps, double warmup_fraction);
  double Factor(int64_t step) const;

 private:
  int64_t total_;
  int64_t warmup_;
};

template <typename T>
class Adam {
 public:
  Adam(ParamSet<T> *params, const AdamConfig &config);

  // Applies one update with the given learning rate using the accumulated
  // gradients, then zeroes them. Returns the pre-clipping gradient norm.
  double Step(double lr);

  int64_t steps() const { return steps_; }

 private:
  ParamSet<T> *params_;
  AdamConfig config_;
  std::vector<Mat<T>> m_;
  std::vector<Mat<T>> v_;
  int64_t steps_ = 0;
};

}  // namespace medlink

#endif  // MEDLINK_NN_ADAM_H_
