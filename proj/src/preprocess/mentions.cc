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

#include "medlink/preprocess/mentions.h"

#include <algorithm>

namespace medlink {

std::vector<Mention> ResolveOverlappingMentions(std::vector<Mention> mentions,
                                                int *dropped) {
  std::sort(mentions.begin(), mentions.end(),
            [](const Mention &a, const Mention &b) {
              if (a.length() != b.length()) return a.length() > b.length();
              if (a.sentence != b.sentence) return a.sentence < b.sentence;
              if (a.start != b.start) return a.start < b.start;
              return a.entity_id < b.entity_id;
            });
  std::vector<Mention> kept;
  int removed = 0;
  for (Mention &m : mentions) {
    bool clash = std::any_of(kept.begin(), kept.end(),
                             [&](const Mention &k) { return k.Overlaps(m); });
    if (clash) {
      ++removed;
    } else {
      kept.push_back(std::move(m));
    }
  }
  std::sort(kept.begin(), kept.end());
  if (dropped != nullptr) *dropped += removed;
  return kept;
}

bool IsOverlapFree(const std::vector<Mention> &mentions) {
  for (size_t i = 0; i < mentions.size(); ++i) {
    for (size_t j = i + 1; j < mentions.size(); ++j) {
      if (mentions[i].Overlaps(mentions[j])) return false;
    }
  }
  return true;
}

}  // namespace medlink
