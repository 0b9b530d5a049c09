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

#include "medlink/eval/prf.h"

namespace medlink {

PrfReport PrfReport::FromCounts(int64_t tp, int64_t fp, int64_t fn) {
  PrfReport r;
  r.tp = tp;
  r.fp = fp;
  r.fn = fn;
  if (tp + fp > 0) {
    r.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  } else {
    r.precision_undefined = true;
  }
  if (tp + fn > 0) {
    r.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  } else {
    r.recall_undefined = true;
  }
  if (r.precision + r.recall > 0.0) {
    r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  }
  return r;
}

PrfReport &PrfReport::operator+=(const PrfReport &other) {
  int64_t dup = duplicates + other.duplicates;
  *this = FromCounts(tp + other.tp, fp + other.fp, fn + other.fn);
  duplicates = dup;
  return *this;
}

json PrfReport::ToJson() const {
  json j{{"tp", tp},         {"fp", fp},         {"fn", fn},
         {"precision", precision}, {"recall", recall}, {"f1", f1}};
  if (precision_undefined) j["precision_undefined"] = true;
  if (recall_undefined) j["recall_undefined"] = true;
  if (duplicates > 0) j["duplicates"] = duplicates;
  return j;
}

}  // namespace medlink
