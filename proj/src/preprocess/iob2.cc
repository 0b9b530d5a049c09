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

#include "medlink/preprocess/iob2.h"

#include "medlink/base/error.h"
#include "medlink/base/text.h"
#include "medlink/preprocess/mentions.h"

namespace medlink {

namespace {

constexpr char kDocStart[] = "-DOCSTART-";

}  // namespace

void WriteIob2(std::ostream &out, const Document &doc) {
  if (!IsOverlapFree(doc.mentions)) {
    throw Error("document " + doc.id + ": overlapping mentions in IOB2 output");
  }
  out << kDocStart << '\t' << doc.id << "\n\n";
  for (int s = 0; s < static_cast<int>(doc.sentences.size()); ++s) {
    std::vector<std::string> tags(doc.sentences[s].size(), "O");
    for (const Mention &m : doc.mentions) {
      if (m.sentence != s) continue;
      std::string label = m.type_id + "|" + m.entity_id;
      tags[m.start] = "B-" + label;
      for (int i = m.start + 1; i < m.end; ++i) tags[i] = "I-" + label;
    }
    for (int i = 0; i < doc.sentences[s].size(); ++i) {
      out << doc.At(s, i).text << '\t' << tags[i] << '\n';
    }
    out << '\n';
  }
}

std::vector<Iob2Document> ReadIob2(std::istream &in) {
  std::vector<Iob2Document> docs;
  std::string line;
  int lineno = 0;
  Mention *open = nullptr;
  bool sentence_open = false;
  auto close_sentence = [&] {
    open = nullptr;
    sentence_open = false;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      close_sentence();
      continue;
    }
    auto fields = Split(line, '\t');
    if (fields.size() != 2) {
      throw Error("iob2 line " + std::to_string(lineno) + ": expected 2 fields");
    }
    if (fields[0] == kDocStart) {
      close_sentence();
      docs.push_back({fields[1], {}, {}});
      continue;
    }
    if (docs.empty()) docs.push_back({"", {}, {}});
    Iob2Document &doc = docs.back();
    if (!sentence_open) {
      doc.sentences.emplace_back();
      sentence_open = true;
    }
    auto &sentence = doc.sentences.back();
    int sid = static_cast<int>(doc.sentences.size()) - 1;
    int index = static_cast<int>(sentence.size());
    sentence.push_back(fields[0]);
    const std::string &tag = fields[1];
    if (tag == "O") {
      open = nullptr;
      continue;
    }
    if (tag.size() < 3 || tag[1] != '-' || (tag[0] != 'B' && tag[0] != 'I')) {
      throw Error("iob2 line " + std::to_string(lineno) + ": bad tag " + tag);
    }
    std::string label = tag.substr(2);
    size_t bar = label.find('|');
    std::string type = bar == std::string::npos ? label : label.substr(0, bar);
    std::string entity =
        bar == std::string::npos ? "" : label.substr(bar + 1);
    bool continues = tag[0] == 'I' && open != nullptr &&
                     open->entity_id == entity && open->type_id == type;
    if (continues) {
      open->end = index + 1;
    } else {
      doc.mentions.push_back({sid, index, index + 1, entity, type});
      open = &doc.mentions.back();
    }
  }
  return docs;
}

}  // namespace medlink
