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

#include "medlink/preprocess/pubtator.h"

#include <fstream>

#include "medlink/base/error.h"
#include "medlink/base/text.h"

namespace medlink {

std::vector<RawDocument> ReadPubTator(std::istream &in) {
  std::vector<RawDocument> docs;
  RawDocument *current = nullptr;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string &why) {
    throw Error("pubtator line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) {
      current = nullptr;
      continue;
    }
    size_t bar = line.find('|');
    size_t tab = line.find('\t');
    if (bar != std::string::npos && (tab == std::string::npos || bar < tab) &&
        bar + 2 < line.size() && line[bar + 2] == '|') {
      std::string id = line.substr(0, bar);
      char kind = line[bar + 1];
      std::string body = line.substr(bar + 3);
      if (current == nullptr || current->id != id) {
        docs.emplace_back();
        current = &docs.back();
        current->id = id;
      }
      if (kind == 't') {
        current->title = body;
      } else if (kind == 'a') {
        current->abstract = body;
      } else {
        fail("unknown section '" + std::string(1, kind) + "'");
      }
      continue;
    }
    auto fields = Split(line, '\t');
    if (fields.size() < 6) fail("expected 6 tab-separated mention fields");
    if (current == nullptr || current->id != fields[0]) {
      fail("mention for document " + fields[0] + " outside its block");
    }
    RawMention m;
    try {
      m.begin = std::stoi(fields[1]);
      m.end = std::stoi(fields[2]);
    } catch (const std::exception &) {
      fail("bad offsets");
    }
    m.text = fields[3];
    m.type_id = fields[4];
    m.entity_id = fields[5];
    if (StartsWith(m.entity_id, "UMLS:")) m.entity_id = m.entity_id.substr(5);
    int text_len = static_cast<int>(current->title.size() + 1 +
                                    current->abstract.size());
    if (m.begin < 0 || m.end <= m.begin || m.end > text_len) {
      fail("mention offsets out of range");
    }
    current->mentions.push_back(std::move(m));
  }
  return docs;
}

std::vector<RawDocument> ReadPubTatorFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return ReadPubTator(in);
}

void WritePubTator(std::ostream &out, const std::vector<RawDocument> &docs) {
  for (const RawDocument &d : docs) {
    out << d.id << "|t|" << d.title << '\n';
    out << d.id << "|a|" << d.abstract << '\n';
    for (const RawMention &m : d.mentions) {
      out << d.id << '\t' << m.begin << '\t' << m.end << '\t' << m.text << '\t'
          << m.type_id << '\t' << m.entity_id << '\n';
    }
    out << '\n';
  }
}

void WritePubTatorFile(const std::string &path,
                       const std::vector<RawDocument> &docs) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  WritePubTator(out, docs);
}

}  // namespace medlink
