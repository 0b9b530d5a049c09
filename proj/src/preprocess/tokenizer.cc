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

#include "medlink/preprocess/tokenizer.h"

#include <algorithm>

#include "medlink/base/text.h"

namespace medlink {

std::set<std::string, std::less<>>
TokenizerOptions::DefaultProtectedAbbreviations() {
  return {"e.g.", "i.e.", "al.", "Fig.", "Figs.", "fig.", "vs.", "Dr.",
          "Mr.",  "Mrs.", "Ms.", "No.",  "no.",   "approx.", "ca.", "cf.",
          "Eq.",  "eq.",  "resp.", "St.", "Ref.", "Refs.", "Inc.", "Ltd.",
          "Co.",  "sp.",  "spp.", "var.", "subsp.", "Tab.", "Vol.", "pp."};
}

namespace {

bool IsProtected(std::string_view word, const TokenizerOptions &options) {
  if (options.protected_abbreviations.count(word) > 0) return true;
  return options.protect_initials && word.size() == 2 && IsUpper(word[0]) &&
         word[1] == '.';
}

void Emit(std::string_view text, int begin, int end,
          std::vector<Token> *tokens) {
  tokens->push_back(
      {std::string(text.substr(begin, end - begin)), begin, end});
}

void SplitChunk(std::string_view text, int begin, int end,
                const TokenizerOptions &options, std::vector<Token> *tokens) {
  // Leading punctuation.
  int b = begin;
  while (b < end && IsPunct(text[b])) {
    Emit(text, b, b + 1, tokens);
    ++b;
  }
  if (b == end) return;

  // A protected abbreviation followed only by punctuation.
  for (int e = end; e > b + 1; --e) {
    if (text[e - 1] != '.') continue;
    bool rest_punct = true;
    for (int k = e; k < end; ++k) rest_punct &= IsPunct(text[k]);
    if (!rest_punct) break;
    if (IsProtected(text.substr(b, e - b), options)) {
      Emit(text, b, e, tokens);
      for (int k = e; k < end; ++k) Emit(text, k, k + 1, tokens);
      return;
    }
  }

  // Trailing punctuation.
  int e = end;
  while (e > b && IsPunct(text[e - 1])) --e;
  Emit(text, b, e, tokens);
  for (int k = e; k < end; ++k) Emit(text, k, k + 1, tokens);
}

}  // namespace

std::vector<Token> Tokenize(std::string_view text,
                            const TokenizerOptions &options) {
  std::vector<Token> tokens;
  int n = static_cast<int>(text.size());
  int i = 0;
  while (i < n) {
    while (i < n && IsSpace(text[i])) ++i;
    int j = i;
    while (j < n && !IsSpace(text[j])) ++j;
    if (j > i) SplitChunk(text, i, j, options, &tokens);
    i = j;
  }
  return tokens;
}

std::vector<Sentence> SegmentSentences(const std::vector<Token> &tokens,
                                       const std::vector<int> &forced_breaks) {
  std::vector<Sentence> sentences;
  int n = static_cast<int>(tokens.size());
  int start = 0;
  for (int i = 0; i < n; ++i) {
    bool brk = i + 1 == n;
    if (!brk) {
      const std::string &t = tokens[i].text;
      bool terminal = t == "." || t == "!" || t == "?";
      if (terminal && IsUpper(tokens[i + 1].text[0])) brk = true;
      for (int offset : forced_breaks) {
        if (tokens[i].end <= offset && tokens[i + 1].begin >= offset) {
          brk = true;
        }
      }
    }
    if (brk) {
      sentences.push_back({start, i + 1});
      start = i + 1;
    }
  }
  return sentences;
}

Document SegmentAndTokenize(std::string id, std::string text,
                            const TokenizerOptions &options, int title_end) {
  Document doc;
  doc.id = std::move(id);
  doc.text = std::move(text);
  doc.title_end = std::max(title_end, 0);
  doc.tokens = Tokenize(doc.text, options);
  std::vector<int> forced;
  if (title_end > 0) forced.push_back(title_end);
  doc.sentences = SegmentSentences(doc.tokens, forced);
  return doc;
}

}  // namespace medlink
