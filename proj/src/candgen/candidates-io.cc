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

#include "medlink/candgen/candidates-io.h"

#include "medlink/base/error.h"

namespace medlink {

json MatchToJson(const LexicalMatch &m) {
  json j{{"entity_id", m.entity_id},
         {"alias", m.alias},
         {"name_type", std::string(NameTypeName(m.name_type))},
         {"type_id", m.type_id},
         {"type_name", m.type_name},
         {"score", m.score}};
  if (m.p) j["p"] = *m.p;
  return j;
}

LexicalMatch MatchFromJson(const json &j) {
  LexicalMatch m;
  m.entity_id = j.at("entity_id").get<std::string>();
  m.alias = j.at("alias").get<std::string>();
  auto nt = ParseNameType(j.at("name_type").get<std::string>());
  if (!nt) throw Error("unknown name type in candidate record");
  m.name_type = *nt;
  m.type_id = j.at("type_id").get<std::string>();
  m.type_name = j.value("type_name", std::string());
  m.score = j.at("score").get<double>();
  if (j.contains("p")) m.p = j.at("p").get<double>();
  return m;
}

json SpanCandidatesToJson(const SpanCandidates &s) {
  json matches = json::array();
  for (const LexicalMatch &m : s.matches) matches.push_back(MatchToJson(m));
  return json{{"doc_id", s.span.doc_id},   {"sentence", s.span.sentence},
              {"start", s.span.start},     {"end", s.span.end},
              {"text", s.span.text},       {"matches", std::move(matches)}};
}

SpanCandidates SpanCandidatesFromJson(const json &j) {
  SpanCandidates s;
  s.span.doc_id = j.at("doc_id").get<std::string>();
  s.span.sentence = j.at("sentence").get<int>();
  s.span.start = j.at("start").get<int>();
  s.span.end = j.at("end").get<int>();
  s.span.text = j.at("text").get<std::string>();
  for (const json &m : j.at("matches")) s.matches.push_back(MatchFromJson(m));
  return s;
}

void WriteSpanCandidates(const std::string &path,
                         const std::vector<SpanCandidates> &spans) {
  std::vector<json> records;
  records.reserve(spans.size());
  for (const SpanCandidates &s : spans) records.push_back(SpanCandidatesToJson(s));
  WriteJsonl(path, records);
}

std::vector<SpanCandidates> ReadSpanCandidates(const std::string &path) {
  std::vector<SpanCandidates> spans;
  ForEachJsonl(path, [&](const json &j) {
    spans.push_back(SpanCandidatesFromJson(j));
  });
  return spans;
}

std::vector<SpanCandidates> GenerateCandidates(const std::vector<Document> &docs,
                                               const LexicalMatcher &matcher,
                                               const StopList &stop_words,
                                               int k_s, int k_m) {
  std::vector<SpanCandidates> out;
  for (const Document &doc : docs) {
    for (CandidateSpan &span : EnumerateCandidateSpans(doc, k_s, stop_words)) {
      SpanCandidates sc;
      sc.matches = matcher.Generate(span.text, k_m);
      sc.span = std::move(span);
      out.push_back(std::move(sc));
    }
  }
  return out;
}

std::vector<SpanCandidates> GenerateGoldSpanCandidates(
    const std::vector<Document> &docs, const LexicalMatcher &matcher, int k_m) {
  std::vector<SpanCandidates> out;
  for (const Document &doc : docs) {
    for (const Mention &m : doc.mentions) {
      SpanCandidates sc;
      sc.span = {doc.id, m.sentence, m.start, m.end,
                 std::string(doc.SpanText(m.sentence, m.start, m.end))};
      sc.matches = matcher.Generate(sc.span.text, k_m);
      out.push_back(std::move(sc));
    }
  }
  return out;
}

}  // namespace medlink
