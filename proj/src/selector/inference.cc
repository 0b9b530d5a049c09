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

#include "medlink/selector/inference.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <unordered_map>

#include "medlink/base/error.h"

namespace medlink {

bool PredictionPositionOrder(const Prediction &a, const Prediction &b) {
  if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
  if (a.sentence != b.sentence) return a.sentence < b.sentence;
  if (a.start != b.start) return a.start < b.start;
  if (a.end != b.end) return a.end < b.end;
  return a.entity_id < b.entity_id;
}

std::vector<Prediction> InferThreshold(const std::vector<Prediction> &samples,
                                       double tau) {
  std::vector<Prediction> out;
  for (const Prediction &s : samples) {
    if (s.score > tau) out.push_back(s);
  }
  return out;
}

std::vector<Prediction> InferGreedy(const std::vector<Prediction> &samples,
                                    double tau) {
  std::map<std::string, std::vector<Prediction>> by_doc;
  for (const Prediction &s : samples) {
    if (s.score > tau) by_doc[s.doc_id].push_back(s);
  }
  // Earliest start first, longer span first on ties.
  auto earlier = [](const Prediction &a, const Prediction &b) {
    if (a.sentence != b.sentence) return a.sentence < b.sentence;
    if (a.start != b.start) return a.start < b.start;
    if (a.end != b.end) return a.end > b.end;
    return a.entity_id < b.entity_id;
  };
  auto better = [&](const Prediction &a, const Prediction &b) {
    if (a.score != b.score) return a.score > b.score;
    return earlier(a, b);
  };
  std::vector<Prediction> out;
  for (auto &[doc, remaining] : by_doc) {
    while (!remaining.empty()) {
      const Prediction &anchor =
          *std::min_element(remaining.begin(), remaining.end(), earlier);
      const Prediction *pick = &anchor;
      for (const Prediction &c : remaining) {
        if (c.Overlaps(anchor) && better(c, *pick)) pick = &c;
      }
      Prediction chosen = *pick;
      remaining.erase(std::remove_if(remaining.begin(), remaining.end(),
                                     [&](const Prediction &c) {
                                       return c.Overlaps(chosen);
                                     }),
                      remaining.end());
      out.push_back(std::move(chosen));
    }
  }
  std::sort(out.begin(), out.end(), PredictionPositionOrder);
  return out;
}

json PredictionToJson(const Prediction &p, const Document *doc) {
  json j{{"doc_id", p.doc_id},
         {"sentence", p.sentence},
         {"token_start", p.start},
         {"token_end", p.end},
         {"entity_id", p.entity_id},
         {"type_id", p.type_id},
         {"score", p.score},
         {"p", p.p},
         {"lexical_score", p.lexical_score},
         {"name_type", std::string(NameTypeName(p.name_type))}};
  if (doc != nullptr) {
    j["start"] = doc->CharBegin(p.sentence, p.start);
    j["end"] = doc->CharEnd(p.sentence, p.end);
    j["text"] = std::string(doc->SpanText(p.sentence, p.start, p.end));
  }
  return j;
}

Prediction PredictionFromJson(const json &j) {
  Prediction p;
  p.doc_id = j.at("doc_id").get<std::string>();
  p.sentence = j.at("sentence").get<int>();
  p.start = j.at("token_start").get<int>();
  p.end = j.at("token_end").get<int>();
  p.entity_id = j.at("entity_id").get<std::string>();
  p.type_id = j.at("type_id").get<std::string>();
  p.score = j.value("score", 0.0);
  p.p = j.value("p", 0.0);
  p.lexical_score = j.value("lexical_score", 0.0);
  auto nt = ParseNameType(j.value("name_type", std::string("synonym")));
  if (!nt) throw Error("unknown name type in prediction record");
  p.name_type = *nt;
  return p;
}

namespace {

std::unordered_map<std::string, const Document *> IndexDocs(
    const std::vector<Document> &docs) {
  std::unordered_map<std::string, const Document *> index;
  for (const Document &d : docs) index[d.id] = &d;
  return index;
}

}  // namespace

void WritePredictionsJsonl(const std::string &path,
                           const std::vector<Prediction> &preds,
                           const std::vector<Document> &docs) {
  auto index = IndexDocs(docs);
  std::vector<json> records;
  for (const Prediction &p : preds) {
    auto it = index.find(p.doc_id);
    records.push_back(
        PredictionToJson(p, it == index.end() ? nullptr : it->second));
  }
  WriteJsonl(path, records);
}

std::vector<Prediction> ReadPredictionsJsonl(const std::string &path) {
  std::vector<Prediction> preds;
  ForEachJsonl(path, [&](const json &j) { preds.push_back(PredictionFromJson(j)); });
  return preds;
}

void WritePredictionsPubTator(const std::string &path,
                              const std::vector<Prediction> &preds,
                              const std::vector<Document> &docs) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  std::map<std::string, std::vector<const Prediction *>> by_doc;
  for (const Prediction &p : preds) by_doc[p.doc_id].push_back(&p);
  for (const Document &doc : docs) {
    std::string title = doc.text.substr(0, doc.title_end);
    std::string abstract = doc.title_end < static_cast<int>(doc.text.size())
                               ? doc.text.substr(doc.title_end + 1)
                               : std::string();
    out << doc.id << "|t|" << title << '\n';
    out << doc.id << "|a|" << abstract << '\n';
    for (const Prediction *p : by_doc[doc.id]) {
      int b = doc.CharBegin(p->sentence, p->start);
      int e = doc.CharEnd(p->sentence, p->end);
      out << doc.id << '\t' << b << '\t' << e << '\t'
          << doc.text.substr(b, e - b) << '\t' << p->type_id << '\t'
          << p->entity_id << '\n';
    }
    out << '\n';
  }
  if (!out) throw Error("write failed: " + path);
}

}  // namespace medlink
