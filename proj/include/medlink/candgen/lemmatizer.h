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

#ifndef MEDLINK_CANDGEN_LEMMATIZER_H_
#define MEDLINK_CANDGEN_LEMMATIZER_H_

#include <string>
#include <string_view>
#include <vector>

namespace medlink {

// Lowercasing plus a handful of plural suffix rules:
//   -ies -> -y (words longer than 4 characters)
//   -sses, -shes, -ches, -xes, -zes -> drop "es"
//   -s -> drop (not after s, u or i; words longer than 3 characters)
// Only purely alphabetic words are rewritten.
class Lemmatizer {
 public:
  explicit Lemmatizer(bool enabled = true) : enabled_(enabled) {}

  bool enabled() const { return enabled_; }

  std::string LemmatizeWord(std::string_view word) const;

  // Lowercased word and punctuation pieces with words lemmatized.
  std::vector<std::string> Pieces(std::string_view text) const;

  // Pieces joined by single spaces.
  std::string Normalize(std::string_view text) const;

 private:
  bool enabled_;
};

}  // namespace medlink

#endif  // MEDLINK_CANDGEN_LEMMATIZER_H_
