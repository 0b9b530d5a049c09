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

#ifndef MEDLINK_LINKER_BINNING_H_
#define MEDLINK_LINKER_BINNING_H_

#include <vector>

namespace medlink {

// Ordered bin boundaries b_0 = 0 < b_1 < ... < b_n = 1 defining n bins
// [b_i, b_{i+1}); the last bin is closed at 1. Values below 0 fall into the
// first bin and values above 1 into the last.
class BinningSpec {
 public:
  BinningSpec() = default;
  // Throws unless boundaries are strictly increasing from 0 to 1.
  explicit BinningSpec(std::vector<double> boundaries);

  // 0, 0.2, 0.4, 0.6, 0.8, 1.0: five bins for lexical scores.
  static BinningSpec LexicalScoreBins();
  // 0, 0.4, 0.5, ..., 0.9, 0.91, ..., 0.99, 1.0: sixteen bins for linker
  // probabilities.
  static BinningSpec ProbabilityBins();

  int Index(double x) const;
  int num_bins() const { return static_cast<int>(boundaries_.size()) - 1; }
  const std::vector<double> &boundaries() const { return boundaries_; }

 private:
  std::vector<double> boundaries_;
};

}  // namespace medlink

#endif  // MEDLINK_LINKER_BINNING_H_
