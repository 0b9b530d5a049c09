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

#include "medlink/nn/vocabulary.h"

#include <algorithm>

#include "medlink/base/error.h"
#include "medlink/base/text.h"

namespace medlink {

namespace {

const char *const kSpecialTokens[] = {"[PAD]", "[UNK]", "[CLS]", "[SEP]"};

}  // namespace

Vocabulary::Vocabulary() : Vocabulary(std::vector<std::string>{}) {}

Vocabulary::Vocabulary(std::vector<std::string> tokens) {
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  tokens_.assign(std::begin(kSpecialTokens), std::end(kSpecialTokens));
  for (std::string &t : tokens) {
    if (t.empty() || std::find(std::begin(kSpecialTokens),
                               std::end(kSpecialTokens), t) !=
                         std::end(kSpecialTokens)) {
      continue;
    }
    tokens_.push_back(std::move(t));
  }
  for (size_t i = 0; i < tokens_.size(); ++i) {
    ids_.emplace(tokens_[i], static_cast<int32_t>(i));
  }
}

int32_t Vocabulary::Id(std::string_view piece) const {
  auto it = ids_.find(std::string(piece));
  return it == ids_.end() ? kUnk : it->second;
}

std::vector<int32_t> Vocabulary::Encode(std::string_view text) const {
  std::vector<int32_t> ids;
  for (const std::string &piece : WordPieces(text)) ids.push_back(Id(piece));
  return ids;
}

json Vocabulary::ToJson() const {
  return json(std::vector<std::string>(tokens_.begin() + kNumSpecial,
                                       tokens_.end()));
}

Vocabulary Vocabulary::FromJson(const json &j) {
  return Vocabulary(j.get<std::vector<std::string>>());
}

void VocabularyBuilder::Add(std::string_view text) {
  for (const std::string &piece : WordPieces(text)) counts_[piece] += 1;
}

void VocabularyBuilder::AddPiece(const std::string &piece, int64_t count) {
  counts_[piece] += count;
}

Vocabulary VocabularyBuilder::Build(int max_size, int min_count) const {
  std::vector<std::pair<std::string, int64_t>> ranked;
  for (const auto &[piece, count] : counts_) {
    if (count >= min_count) ranked.emplace_back(piece, count);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto &a, const auto &b) { return a.second > b.second; });
  if (max_size > 0 && ranked.size() > static_cast<size_t>(max_size)) {
    ranked.resize(max_size);
  }
  std::vector<std::string> tokens;
  for (auto &[piece, count] : ranked) tokens.push_back(piece);
  return Vocabulary(std::move(tokens));
}

}  // namespace medlink
