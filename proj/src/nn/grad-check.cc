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

#include "medlink/nn/grad-check.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace medlink {

namespace {

std::vector<int64_t> SampleEntries(const Mat<double> &grad, int n,
                                   std::mt19937_64 *rng) {
  const int64_t size = grad.size();
  std::vector<int64_t> all(size);
  std::iota(all.begin(), all.end(), 0);
  if (size <= n) return all;
  std::vector<int64_t> nonzero;
  for (int64_t i = 0; i < size; ++i) {
    if (grad.data()[i] != 0.0) nonzero.push_back(i);
  }
  std::shuffle(nonzero.begin(), nonzero.end(), *rng);
  std::vector<int64_t> picked(
      nonzero.begin(),
      nonzero.begin() + std::min<size_t>(nonzero.size(), n / 2));
  std::shuffle(all.begin(), all.end(), *rng);
  for (int64_t i : all) {
    if (static_cast<int>(picked.size()) >= n) break;
    if (std::find(picked.begin(), picked.end(), i) == picked.end()) {
      picked.push_back(i);
    }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace

GradCheckResult GradCheck(ParamSet<double> *params,
                          const std::function<double(bool)> &loss,
                          const GradCheckOptions &options) {
  params->ZeroGrad();
  loss(true);
  std::vector<Mat<double>> analytic;
  for (const Tensor<double> &t : params->tensors()) analytic.push_back(t.grad);
  params->ZeroGrad();

  std::mt19937_64 rng(options.seed);
  GradCheckResult result;
  size_t k = 0;
  for (Tensor<double> &t : params->tensors()) {
    const Mat<double> &grad = analytic[k++];
    TensorGradCheck check;
    check.name = t.name;
    for (int64_t idx : SampleEntries(grad, options.samples_per_tensor, &rng)) {
      double &w = t.value.data()[idx];
      const double saved = w;
      w = saved + options.epsilon;
      double plus = loss(false);
      w = saved - options.epsilon;
      double minus = loss(false);
      w = saved;
      double numeric = (plus - minus) / (2.0 * options.epsilon);
      double a = grad.data()[idx];
      double denom = std::max({std::abs(a), std::abs(numeric), options.floor});
      double rel = std::abs(a - numeric) / denom;
      check.max_rel_error = std::max(check.max_rel_error, rel);
      check.max_abs_grad = std::max(check.max_abs_grad, std::abs(a));
      ++check.checked;
    }
    result.max_rel_error = std::max(result.max_rel_error, check.max_rel_error);
    if (check.max_rel_error >= options.threshold) {
      result.failing.push_back(check.name);
    }
    result.tensors.push_back(std::move(check));
  }
  return result;
}

}  // namespace medlink
