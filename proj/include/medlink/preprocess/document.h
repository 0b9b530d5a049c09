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

#ifndef MEDLINK_PREPROCESS_DOCUMENT_H_
#define MEDLINK_PREPROCESS_DOCUMENT_H_

#include <string>
#include <string_view>
#include <vector>

#include "medlink/base/io.h"

namespace medlink {

// Mention annotation as found in the raw corpus (character offsets).
struct RawMention {
  int begin = 0;
  int end = 0;
  std::string text;
  std::string type_id;
  std::string entity_id;

  bool operator==(const RawMention &other) const = default;
};

// A PubTator document. The full text is title + ' ' + abstract and all
// mention offsets index into it.
struct RawDocument {
  std::string id;
  std::string title;
  std::string abstract;
  std::vector<RawMention> mentions;

  std::string Text() const;
};

struct Token {
  std::string text;
  int begin = 0;  // character offsets into Document::text
  int end = 0;

  bool operator==(const Token &other) const = default;
};

// Token range [begin, end) of a sentence.
struct Sentence {
  int begin = 0;
  int end = 0;

  int size() const { return end - begin; }
  bool operator==(const Sentence &other) const = default;
};

// Token-level mention: tokens [start, end) of one sentence.
struct Mention {
  int sentence = 0;
  int start = 0;
  int end = 0;
  std::string entity_id;
  std::string type_id;

  int length() const { return end - start; }
  bool Overlaps(const Mention &other) const {
    return sentence == other.sentence && start < other.end &&
           other.start < end;
  }
  auto operator<=>(const Mention &other) const = default;
};

// A preprocessed document: expanded text, tokens, sentences and resolved
// mentions, plus the raw-corpus entity set kept for document-level scoring.
struct Document {
  std::string id;
  std::string text;
  int title_end = 0;  // character offset where the title ends
  std::vector<Token> tokens;
  std::vector<Sentence> sentences;
  std::vector<Mention> mentions;

  // Unique entity ids annotated in the raw (unprocessed) document, sorted.
  std::vector<std::string> raw_entities;
  // Raw mentions that did not survive preprocessing.
  int dropped_mentions = 0;

  // Token of a sentence by local index.
  const Token &At(int sentence, int index) const {
    return tokens[sentences[sentence].begin + index];
  }
  // Surface text of tokens [start, end) of a sentence.
  std::string_view SpanText(int sentence, int start, int end) const;
  int CharBegin(int sentence, int start) const {
    return At(sentence, start).begin;
  }
  int CharEnd(int sentence, int end) const { return At(sentence, end - 1).end; }
};

json DocumentToJson(const Document &doc);
Document DocumentFromJson(const json &j);

void WriteDocuments(const std::string &path, const std::vector<Document> &docs);
std::vector<Document> ReadDocuments(const std::string &path);

}  // namespace medlink

#endif  // MEDLINK_PREPROCESS_DOCUMENT_H_
