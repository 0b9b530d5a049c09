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

#include "medlink/candgen/lemmatizer.h"

#include <algorithm>

#include "medlink/base/text.h"

namespace medlink {

std::string Lemmatizer::LemmatizeWord(std::string_view word) const {
  std::string w = ToLower(word);
  if (!enabled_ || w.empty() ||
      !std::all_of(w.begin(), w.end(), [](char c) { return IsAsciiAlpha(c); })) {
    return w;
  }
  size_t n = w.size();
  if (n > 4 && EndsWith(w, "ies")) return w.substr(0, n - 3) + "y";
  for (const char *suffix : {"sses", "shes", "ches", "xes", "zes"}) {
    if (EndsWith(w, suffix) && n > std::char_traits<char>::length(suffix)) {
      return w.substr(0, n - 2);
    }
  }
  if (n > 3 && w[n - 1] == 's' && w[n - 2] != 's' && w[n - 2] != 'u' &&
      w[n - 2] != 'i') {
    return w.substr(0, n - 1);
  }
  return w;
}

std::vector<std::string> Lemmatizer::Pieces(std::string_view text) const {
  std::vector<std::string> pieces = WordPieces(text);
  for (std::string &p : pieces) {
    if (IsWordChar(p[0])) p = LemmatizeWord(p);
  }
  return pieces;
}

std::string Lemmatizer::Normalize(std::string_view text) const {
  return Join(Pieces(text), " ");
}

}  // namespace medlink
