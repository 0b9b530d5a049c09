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

#ifndef MEDLINK_NN_GRAD_CHECK_H_
#define MEDLINK_NN_GRAD_CHECK_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "medlink/nn/layers.h"

namespace medlink {

struct GradCheckOptions {
  double epsilon = 1e-5;
  int samples_per_tensor = 32;
  double threshold = 1e-4;
  // Denominator floor of the relative error.
  double floor = 1e-6;
  uint64_t seed = 1;
};

struct TensorGradCheck {
  std::string name;
  int checked = 0;
  double max_rel_error = 0.0;
  double max_abs_grad = 0.0;
};

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::vector<TensorGradCheck> tensors;
  std::vector<std::string> failing;  // tensors at or above the threshold

  bool ok() const { return failing.empty(); }
};

// Compares analytic gradients with central finite differences. The loss
// callback must return the loss and, when its argument is true, accumulate
// gradients into the (zeroed) parameter set. Half of the sampled entries of
// each tensor are drawn from entries with a nonzero analytic gradient and
// half uniformly; tensors with fewer entries than the sample size are
// checked in full. Relative error is |a - n| / max(|a|, |n|, floor).
GradCheckResult GradCheck(ParamSet<double> *params,
                          const std::function<double(bool)> &loss,
                          const GradCheckOptions &options);

}  // namespace medlink

#endif  // MEDLINK_NN_GRAD_CHECK_H_
