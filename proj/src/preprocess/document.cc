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

#include "medlink/preprocess/document.h"

#include "medlink/base/error.h"

namespace medlink {

std::string RawDocument::Text() const { return title + " " + abstract; }

std::string_view Document::SpanText(int sentence, int start, int end) const {
  int b = CharBegin(sentence, start);
  int e = CharEnd(sentence, end);
  return std::string_view(text).substr(b, e - b);
}

json DocumentToJson(const Document &doc) {
  json tokens = json::array();
  for (const Token &t : doc.tokens) tokens.push_back({t.begin, t.end});
  json sentences = json::array();
  for (const Sentence &s : doc.sentences) sentences.push_back({s.begin, s.end});
  json mentions = json::array();
  for (const Mention &m : doc.mentions) {
    mentions.push_back({{"sentence", m.sentence},
                        {"start", m.start},
                        {"end", m.end},
                        {"entity_id", m.entity_id},
                        {"type_id", m.type_id}});
  }
  return {{"doc_id", doc.id},
          {"text", doc.text},
          {"title_end", doc.title_end},
          {"tokens", tokens},
          {"sentences", sentences},
          {"mentions", mentions},
          {"raw_entities", doc.raw_entities},
          {"dropped_mentions", doc.dropped_mentions}};
}

Document DocumentFromJson(const json &j) {
  Document doc;
  doc.id = j.at("doc_id").get<std::string>();
  doc.text = j.at("text").get<std::string>();
  doc.title_end = j.value("title_end", 0);
  for (const json &t : j.at("tokens")) {
    Token token;
    token.begin = t.at(0).get<int>();
    token.end = t.at(1).get<int>();
    if (token.begin < 0 || token.end > static_cast<int>(doc.text.size()) ||
        token.end <= token.begin) {
      throw Error("document " + doc.id + ": bad token offsets");
    }
    token.text = doc.text.substr(token.begin, token.end - token.begin);
    doc.tokens.push_back(std::move(token));
  }
  for (const json &s : j.at("sentences")) {
    doc.sentences.push_back({s.at(0).get<int>(), s.at(1).get<int>()});
  }
  for (const json &m : j.at("mentions")) {
    Mention mention;
    mention.sentence = m.at("sentence").get<int>();
    mention.start = m.at("start").get<int>();
    mention.end = m.at("end").get<int>();
    mention.entity_id = m.at("entity_id").get<std::string>();
    mention.type_id = m.at("type_id").get<std::string>();
    doc.mentions.push_back(std::move(mention));
  }
  doc.raw_entities =
      j.value("raw_entities", std::vector<std::string>());
  doc.dropped_mentions = j.value("dropped_mentions", 0);
  return doc;
}

void WriteDocuments(const std::string &path,
                    const std::vector<Document> &docs) {
  std::vector<json> records;
  records.reserve(docs.size());
  for (const Document &d : docs) records.push_back(DocumentToJson(d));
  WriteJsonl(path, records);
}

std::vector<Document> ReadDocuments(const std::string &path) {
  std::vector<Document> docs;
  ForEachJsonl(path, [&](const json &j) { docs.push_back(DocumentFromJson(j)); });
  return docs;
}

}  // namespace medlink
