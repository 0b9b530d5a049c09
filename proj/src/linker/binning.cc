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

#include "medlink/linker/binning.h"

#include <algorithm>

#include "medlink/base/error.h"

namespace medlink {

BinningSpec::BinningSpec(std::vector<double> boundaries)
    : boundaries_(std::move(boundaries)) {
  if (boundaries_.size() < 2 || boundaries_.front() != 0.0 ||
      boundaries_.back() != 1.0) {
    throw Error("bin boundaries must start at 0 and end at 1");
  }
  for (size_t i = 1; i < boundaries_.size(); ++i) {
    if (!(boundaries_[i] > boundaries_[i - 1])) {
      throw Error("bin boundaries must be strictly increasing");
    }
  }
}

BinningSpec BinningSpec::LexicalScoreBins() {
  return BinningSpec({0.0, 0.2, 0.4, 0.6, 0.8, 1.0});
}

BinningSpec BinningSpec::ProbabilityBins() {
  return BinningSpec({0.0, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.91, 0.92, 0.93,
                      0.94, 0.95, 0.96, 0.97, 0.98, 0.99, 1.0});
}

int BinningSpec::Index(double x) const {
  if (boundaries_.empty()) throw Error("empty binning spec");
  int last = num_bins() - 1;
  if (!(x > 0.0)) return 0;
  if (x >= 1.0) return last;
  auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), x);
  return std::min(static_cast<int>(it - boundaries_.begin()) - 1, last);
}

}  // namespace medlink
