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

#ifndef MEDLINK_EVAL_PRF_H_
#define MEDLINK_EVAL_PRF_H_

#include <cstdint>

#include "medlink/base/io.h"

namespace medlink {

// Precision/recall/F1 from micro-averaged counts. A zero denominator yields
// 0 with the matching flag set.
struct PrfReport {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool precision_undefined = false;
  bool recall_undefined = false;
  int64_t duplicates = 0;  // repeated identical predictions ignored

  static PrfReport FromCounts(int64_t tp, int64_t fp, int64_t fn);
  PrfReport &operator+=(const PrfReport &other);
  json ToJson() const;
};

}  // namespace medlink

#endif  // MEDLINK_EVAL_PRF_H_
