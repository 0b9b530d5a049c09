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

#ifndef MEDLINK_NN_VOCABULARY_H_
#define MEDLINK_NN_VOCABULARY_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "medlink/base/io.h"

namespace medlink {

// Closed vocabulary of lowercased word and punctuation pieces. Ids 0-3 are
// reserved for [PAD], [UNK], [CLS] and [SEP]; regular tokens follow in
// lexicographic order.
class Vocabulary {
 public:
  static constexpr int32_t kPad = 0;
  static constexpr int32_t kUnk = 1;
  static constexpr int32_t kCls = 2;
  static constexpr int32_t kSep = 3;
  static constexpr int kNumSpecial = 4;

  Vocabulary();
  explicit Vocabulary(std::vector<std::string> tokens);

  int32_t Id(std::string_view piece) const;
  const std::string &Token(int32_t id) const { return tokens_.at(id); }
  int size() const { return static_cast<int>(tokens_.size()); }
  const std::vector<std::string> &tokens() const { return tokens_; }

  // Ids of the pieces of raw text.
  std::vector<int32_t> Encode(std::string_view text) const;

  json ToJson() const;
  static Vocabulary FromJson(const json &j);

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int32_t> ids_;
};

// Counts pieces and keeps the most frequent ones.
class VocabularyBuilder {
 public:
  void Add(std::string_view text);
  void AddPiece(const std::string &piece, int64_t count = 1);
  // Keeps pieces seen at least min_count times, at most max_size regular
  // tokens (most frequent first, ties lexicographic). max_size <= 0 means no
  // limit.
  Vocabulary Build(int max_size = 0, int min_count = 1) const;

 private:
  std::map<std::string, int64_t> counts_;
};

}  // namespace medlink

#endif  // MEDLINK_NN_VOCABULARY_H_
