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

#ifndef MEDLINK_NN_FF_HEAD_H_
#define MEDLINK_NN_FF_HEAD_H_

#include <random>
#include <string>
#include <vector>

#include "medlink/nn/layers.h"

namespace medlink {

// Feed-forward scorer: dropout on the input, then Linear-GeLU layers of the
// given hidden sizes and a final Linear to one output.
template <typename T>
class FFHead {
 public:
  struct Cache {
    std::vector<Mat<T>> inputs;  // input to each Linear
    std::vector<Mat<T>> pre;     // pre-activations of hidden layers
    std::vector<uint8_t> keep;   // dropout mask, empty when inactive
  };

  FFHead(int in, const std::vector<int> &hidden, double dropout,
         ParamSet<T> *params, const std::string &prefix);

  void Init(std::mt19937_64 *rng);

  int in() const { return in_; }

  // dropout_rng enables dropout (training); null means inference.
  T Forward(const RowVec<T> &x, Cache *cache, std::mt19937_64 *dropout_rng) const;

  // Accumulates parameter gradients; returns d(loss)/d(x).
  RowVec<T> Backward(const Cache &cache, T d_out) const;

 private:
  int in_;
  double dropout_;
  std::vector<Linear<T>> layers_;
};

}  // namespace medlink

#endif  // MEDLINK_NN_FF_HEAD_H_
