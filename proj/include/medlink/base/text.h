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

#ifndef MEDLINK_BASE_TEXT_H_
#define MEDLINK_BASE_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace medlink {

// ASCII-only character classes. Bytes >= 0x80 (UTF-8 sequences) count as
// word characters so that non-ASCII letters stay inside tokens.
inline bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}
inline bool IsAsciiAlpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
inline bool IsDigit(char c) { return c >= '0' && c <= '9'; }
inline bool IsUpper(char c) { return c >= 'A' && c <= 'Z'; }
inline bool IsWordChar(char c) {
  return IsAsciiAlpha(c) || IsDigit(c) || static_cast<unsigned char>(c) >= 0x80;
}
inline bool IsPunct(char c) { return !IsSpace(c) && !IsWordChar(c); }

std::string ToLower(std::string_view s);
std::string_view Trim(std::string_view s);

// Collapses runs of whitespace into one space and trims both ends.
std::string NormalizeWhitespace(std::string_view s);

// Splits on a single delimiter character, keeping empty fields.
std::vector<std::string> Split(std::string_view s, char delim);

// True if every character of a non-empty token is punctuation.
bool IsPunctToken(std::string_view token);

// Splits text into lowercased word and punctuation pieces: runs of word
// characters form one piece and every punctuation character is its own piece.
std::vector<std::string> WordPieces(std::string_view text);

bool StartsWith(std::string_view s, std::string_view prefix);
bool EndsWith(std::string_view s, std::string_view suffix);

std::string Join(const std::vector<std::string> &parts, std::string_view sep);

}  // namespace medlink

#endif  // MEDLINK_BASE_TEXT_H_
