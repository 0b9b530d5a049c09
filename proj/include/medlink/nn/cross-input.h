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

#ifndef MEDLINK_NN_CROSS_INPUT_H_
#define MEDLINK_NN_CROSS_INPUT_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "medlink/nn/vocabulary.h"
#include "medlink/preprocess/document.h"

namespace medlink {

// "[CLS] context-with-mention [SEP] entity text [SEP]" as parallel arrays.
struct CrossInput {
  std::vector<int32_t> ids;
  std::vector<uint8_t> segments;       // 0 mention context, 1 entity text
  std::vector<uint8_t> mention_mask;   // 1 on mention pieces
  std::vector<uint8_t> attention_mask; // 0 on padding
  bool truncated = false;              // mention or entity text was cut

  int size() const { return static_cast<int>(ids.size()); }
};

// Vocabulary ids of every token of a document, with per-token offsets.
struct DocumentPieces {
  std::vector<int32_t> ids;
  // Piece range of token t is [token_begin[t], token_begin[t + 1]).
  std::vector<int> token_begin;

  static DocumentPieces Build(const Document &doc, const Vocabulary &vocab);
};

// Builds the paired input for the mention covering document tokens
// [token_start, token_end). The entity text is kept whole when possible;
// the context is trimmed symmetrically around the mention (alternating left
// and right) to fit max_len. If even the mention does not fit, its tail is
// cut and the input is flagged.
CrossInput BuildCrossInput(const DocumentPieces &doc, int token_start,
                           int token_end,
                           const std::vector<int32_t> &entity_ids, int max_len);

// Appends [PAD] positions (attention mask 0) up to length n.
void PadCrossInput(CrossInput *input, int n);

}  // namespace medlink

#endif  // MEDLINK_NN_CROSS_INPUT_H_
