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

#ifndef MEDLINK_PREPROCESS_TOKENIZER_H_
#define MEDLINK_PREPROCESS_TOKENIZER_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "medlink/preprocess/document.h"

namespace medlink {

struct TokenizerOptions {
  // Tokens ending in '.' that keep their period and never end a sentence.
  std::set<std::string, std::less<>> protected_abbreviations =
      DefaultProtectedAbbreviations();
  // Also protect single capital initials such as "E." in "E. coli".
  bool protect_initials = true;

  static std::set<std::string, std::less<>> DefaultProtectedAbbreviations();
};

// Rule-based tokenizer: splits on whitespace and detaches leading and
// trailing punctuation characters as separate tokens. Interior punctuation
// ("IL-6", "0.05") stays inside the token.
std::vector<Token> Tokenize(std::string_view text,
                            const TokenizerOptions &options);

// Sentence break after '.', '!' or '?' tokens followed by a token starting
// with a capital letter, and at every forced character offset (e.g. the end
// of the title).
std::vector<Sentence> SegmentSentences(const std::vector<Token> &tokens,
                                       const std::vector<int> &forced_breaks);

// Tokenizes and sentence-splits raw text into a document without mentions.
Document SegmentAndTokenize(std::string id, std::string text,
                            const TokenizerOptions &options,
                            int title_end = -1);

}  // namespace medlink

#endif  // MEDLINK_PREPROCESS_TOKENIZER_H_
