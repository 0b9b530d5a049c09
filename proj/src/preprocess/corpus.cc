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

#include "medlink/preprocess/corpus.h"

#include <algorithm>
#include <set>

#include "medlink/preprocess/mentions.h"

namespace medlink {

namespace {

// Token range [first, last] covering the character span, or first > last
// when no token intersects it.
std::pair<int, int> CoveringTokens(const std::vector<Token> &tokens, int begin,
                                   int end) {
  auto lo = std::partition_point(tokens.begin(), tokens.end(),
                                 [&](const Token &t) { return t.end <= begin; });
  auto hi = std::partition_point(tokens.begin(), tokens.end(),
                                 [&](const Token &t) { return t.begin < end; });
  return {static_cast<int>(lo - tokens.begin()),
          static_cast<int>(hi - tokens.begin()) - 1};
}

}  // namespace

json PreprocessReport::ToJson() const {
  return json{{"documents", documents},
              {"sentences", sentences},
              {"tokens", tokens},
              {"raw_mentions", raw_mentions},
              {"kept_mentions", kept_mentions},
              {"abbreviation_definitions", abbreviation_definitions},
              {"abbreviation_replacements", abbreviation_replacements},
              {"abbreviation_conflicts", abbreviation_conflicts},
              {"dropped_at_definition", dropped_at_definition},
              {"dropped_unaligned", dropped_unaligned},
              {"dropped_overlap", dropped_overlap},
              {"dropped_total", dropped()},
              {"merged_sentences", merged_sentences}};
}

Document PreprocessDocument(const RawDocument &raw,
                            const PreprocessOptions &options,
                            PreprocessReport *report) {
  PreprocessReport local;
  if (report == nullptr) report = &local;

  std::string raw_text = raw.Text();
  std::vector<AbbrevDefinition> defs;
  auto ext = options.external_abbreviations.find(raw.id);
  if (ext != options.external_abbreviations.end()) {
    defs = ext->second;
    LocateDefinitions(raw_text, &defs);
  } else if (options.detect_abbreviations) {
    defs = DetectAbbreviations(raw_text);
  }
  ExpansionStats stats;
  ExpandedText expanded = ExpandAbbreviations(raw, defs, &stats);

  Document doc = SegmentAndTokenize(raw.id, std::move(expanded.text),
                                    options.tokenizer, expanded.title_end);

  // Align mentions to tokens.
  struct Aligned {
    int first, last;
    const RawMention *raw;
  };
  std::vector<Aligned> aligned;
  int unaligned = 0;
  for (const RawMention &m : expanded.mentions) {
    auto [first, last] = CoveringTokens(doc.tokens, m.begin, m.end);
    if (m.begin >= m.end || first > last) {
      ++unaligned;
      continue;
    }
    aligned.push_back({first, last, &m});
  }

  // Merge sentences that a mention crosses.
  std::vector<int> sentence_of(doc.tokens.size());
  for (int s = 0; s < static_cast<int>(doc.sentences.size()); ++s) {
    for (int t = doc.sentences[s].begin; t < doc.sentences[s].end; ++t) {
      sentence_of[t] = s;
    }
  }
  std::vector<bool> join_next(doc.sentences.size(), false);
  for (const Aligned &a : aligned) {
    for (int s = sentence_of[a.first]; s < sentence_of[a.last]; ++s) {
      join_next[s] = true;
    }
  }
  std::vector<Sentence> merged;
  for (int s = 0; s < static_cast<int>(doc.sentences.size()); ++s) {
    if (s > 0 && join_next[s - 1]) {
      merged.back().end = doc.sentences[s].end;
      ++report->merged_sentences;
    } else {
      merged.push_back(doc.sentences[s]);
    }
  }
  doc.sentences = std::move(merged);
  for (int s = 0; s < static_cast<int>(doc.sentences.size()); ++s) {
    for (int t = doc.sentences[s].begin; t < doc.sentences[s].end; ++t) {
      sentence_of[t] = s;
    }
  }

  std::vector<Mention> mentions;
  for (const Aligned &a : aligned) {
    int s = sentence_of[a.first];
    int base = doc.sentences[s].begin;
    mentions.push_back({s, a.first - base, a.last + 1 - base,
                        a.raw->entity_id, a.raw->type_id});
  }
  int overlap = 0;
  doc.mentions = ResolveOverlappingMentions(std::move(mentions), &overlap);

  std::set<std::string> entities;
  for (const RawMention &m : raw.mentions) {
    if (!m.entity_id.empty()) entities.insert(m.entity_id);
  }
  doc.raw_entities.assign(entities.begin(), entities.end());
  doc.dropped_mentions =
      static_cast<int>(raw.mentions.size() - doc.mentions.size());

  report->documents += 1;
  report->sentences += static_cast<int>(doc.sentences.size());
  report->tokens += static_cast<int>(doc.tokens.size());
  report->raw_mentions += static_cast<int>(raw.mentions.size());
  report->kept_mentions += static_cast<int>(doc.mentions.size());
  report->abbreviation_definitions += stats.definitions;
  report->abbreviation_replacements += stats.replacements;
  report->abbreviation_conflicts += stats.conflicts;
  report->dropped_at_definition += stats.dropped_mentions;
  report->dropped_unaligned += unaligned;
  report->dropped_overlap += overlap;
  return doc;
}

std::vector<Document> PreprocessCorpus(const std::vector<RawDocument> &raw,
                                       const PreprocessOptions &options,
                                       PreprocessReport *report) {
  std::vector<Document> docs;
  docs.reserve(raw.size());
  for (const RawDocument &r : raw) {
    docs.push_back(PreprocessDocument(r, options, report));
  }
  return docs;
}

}  // namespace medlink
