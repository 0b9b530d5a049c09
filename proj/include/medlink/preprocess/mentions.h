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

#ifndef MEDLINK_PREPROCESS_MENTIONS_H_
#define MEDLINK_PREPROCESS_MENTIONS_H_

#include <vector>

#include "medlink/preprocess/document.h"

namespace medlink {

// Greedy overlap resolution: mentions are visited longest first, then by
// earlier start, then by entity id, and kept when they do not overlap an
// already kept mention. The result is sorted by position.
std::vector<Mention> ResolveOverlappingMentions(std::vector<Mention> mentions,
                                                int *dropped = nullptr);

// True if no two mentions overlap.
bool IsOverlapFree(const std::vector<Mention> &mentions);

}  // namespace medlink

#endif  // MEDLINK_PREPROCESS_MENTIONS_H_
