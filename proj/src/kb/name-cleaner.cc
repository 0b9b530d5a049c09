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

#include "medlink/kb/name-cleaner.h"

#include <algorithm>

#include "medlink/base/text.h"

namespace medlink {

namespace {

// Opening/closing qualifier brackets: ASCII, U+27E8/U+27E9 and U+2329/U+232A.
struct Bracket {
  std::string_view open;
  std::string_view close;
};
constexpr Bracket kBrackets[] = {
    {"<", ">"},
    {"\xE2\x9F\xA8", "\xE2\x9F\xA9"},
    {"\xE2\x8C\xA9", "\xE2\x8C\xAA"},
};

bool IsSeparator(char c) {
  return IsSpace(c) || c == ',' || c == ';' || c == ':' || c == '-' ||
         c == '/';
}

std::string StripSeparators(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && IsSeparator(s[b])) ++b;
  while (e > b && IsSeparator(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

// Removes "()", "[]" and "{}" pairs that enclose only whitespace.
std::string RemoveEmptyBrackets(std::string s) {
  static const char kPairs[][2] = {{'(', ')'}, {'[', ']'}, {'{', '}'}};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto &pair : kPairs) {
      for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] != pair[0]) continue;
        size_t j = i + 1;
        while (j < s.size() && IsSpace(s[j])) ++j;
        if (j < s.size() && s[j] == pair[1]) {
          s.erase(i, j - i + 1);
          changed = true;
          break;
        }
      }
    }
  }
  return s;
}

// Replaces stray bracket characters so cleaned names never carry them.
std::string DropAngleBrackets(std::string s) {
  for (const Bracket &b : kBrackets) {
    for (std::string_view piece : {b.open, b.close}) {
      size_t pos;
      while ((pos = s.find(piece)) != std::string::npos) {
        s.replace(pos, piece.size(), " ");
      }
    }
  }
  return s;
}

}  // namespace

NameCleaner::NameCleaner() : NameCleaner(DefaultMetaTokens()) {}

NameCleaner::NameCleaner(std::vector<std::string> meta_tokens)
    : meta_tokens_(std::move(meta_tokens)) {
  std::stable_sort(meta_tokens_.begin(), meta_tokens_.end(),
                   [](const std::string &a, const std::string &b) {
                     return a.size() > b.size();
                   });
}

std::vector<std::string> NameCleaner::DefaultMetaTokens() {
  return {"Formally", "Not Otherwise Specified", "NOS"};
}

std::string NameCleaner::RemoveMetaTokens(std::string_view name) const {
  std::string s(name);
  for (const std::string &token : meta_tokens_) {
    if (token.empty()) continue;
    size_t pos = 0;
    while ((pos = s.find(token, pos)) != std::string::npos) {
      size_t end = pos + token.size();
      bool left_ok = pos == 0 || !IsWordChar(s[pos - 1]);
      bool right_ok = end == s.size() || !IsWordChar(s[end]);
      if (left_ok && right_ok) {
        s.replace(pos, token.size(), " ");
      } else {
        pos = end;
      }
    }
  }
  return s;
}

CleanedName NameCleaner::Clean(std::string_view raw) const {
  CleanedName result;
  std::string name(Trim(raw));
  if (name.empty()) {
    result.rejected = "empty raw name";
    return result;
  }

  // Trailing disambiguating qualifier.
  for (const Bracket &b : kBrackets) {
    if (!EndsWith(name, b.close)) continue;
    size_t open = name.rfind(b.open);
    if (open == std::string::npos) continue;
    std::string inner = NormalizeWhitespace(std::string_view(name).substr(
        open + b.open.size(), name.size() - b.close.size() - open -
                                  b.open.size()));
    inner = NormalizeWhitespace(DropAngleBrackets(inner));
    if (!inner.empty()) result.qualifier = inner;
    name.erase(open);
    break;
  }

  name = RemoveMetaTokens(name);
  name = DropAngleBrackets(name);
  name = RemoveEmptyBrackets(name);
  name = StripSeparators(NormalizeWhitespace(name));
  name = NormalizeWhitespace(name);
  if (name.empty()) {
    result.rejected = "name empty after cleaning: '" + std::string(raw) + "'";
    result.qualifier.reset();
    return result;
  }
  result.name = std::move(name);
  return result;
}

}  // namespace medlink
