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

#include "medlink/nn/cross-input.h"

#include <algorithm>

#include "medlink/base/error.h"
#include "medlink/base/text.h"

namespace medlink {

DocumentPieces DocumentPieces::Build(const Document &doc,
                                     const Vocabulary &vocab) {
  DocumentPieces pieces;
  pieces.token_begin.reserve(doc.tokens.size() + 1);
  for (const Token &t : doc.tokens) {
    pieces.token_begin.push_back(static_cast<int>(pieces.ids.size()));
    for (const std::string &p : WordPieces(t.text)) {
      pieces.ids.push_back(vocab.Id(p));
    }
  }
  pieces.token_begin.push_back(static_cast<int>(pieces.ids.size()));
  return pieces;
}

CrossInput BuildCrossInput(const DocumentPieces &doc, int token_start,
                           int token_end,
                           const std::vector<int32_t> &entity_ids, int max_len) {
  if (max_len < 5) throw Error("maximum sequence length must be at least 5");
  if (token_start < 0 || token_end <= token_start ||
      token_end + 1 > static_cast<int>(doc.token_begin.size())) {
    throw Error("mention token range out of bounds");
  }
  CrossInput in;
  int entity_len = static_cast<int>(entity_ids.size());
  // One piece of mention at minimum.
  if (entity_len > max_len - 4) {
    entity_len = max_len - 4;
    in.truncated = true;
  }
  int budget = max_len - 3 - entity_len;
  int m_begin = doc.token_begin[token_start];
  int m_end = doc.token_begin[token_end];
  int total = static_cast<int>(doc.ids.size());
  if (m_end - m_begin > budget) {
    m_end = m_begin + budget;
    in.truncated = true;
  }
  int left = m_begin, right = m_end;
  int remaining = budget - (m_end - m_begin);
  bool take_left = true;
  while (remaining > 0 && (left > 0 || right < total)) {
    if ((take_left && left > 0) || right >= total) {
      --left;
    } else {
      ++right;
    }
    --remaining;
    take_left = !take_left;
  }
  auto push = [&](int32_t id, uint8_t segment, uint8_t mention) {
    in.ids.push_back(id);
    in.segments.push_back(segment);
    in.mention_mask.push_back(mention);
    in.attention_mask.push_back(1);
  };
  push(Vocabulary::kCls, 0, 0);
  for (int i = left; i < right; ++i) {
    push(doc.ids[i], 0, i >= m_begin && i < m_end ? 1 : 0);
  }
  push(Vocabulary::kSep, 0, 0);
  for (int i = 0; i < entity_len; ++i) push(entity_ids[i], 1, 0);
  push(Vocabulary::kSep, 1, 0);
  return in;
}

void PadCrossInput(CrossInput *input, int n) {
  while (input->size() < n) {
    input->ids.push_back(Vocabulary::kPad);
    input->segments.push_back(1);
    input->mention_mask.push_back(0);
    input->attention_mask.push_back(0);
  }
}

}  // namespace medlink
