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

#ifndef MEDLINK_CANDGEN_CANDIDATES_IO_H_
#define MEDLINK_CANDGEN_CANDIDATES_IO_H_

#include <string>
#include <vector>

#include "medlink/base/io.h"
#include "medlink/candgen/lexical-matcher.h"
#include "medlink/candgen/span-enumerator.h"
#include "medlink/candgen/stop-words.h"
#include "medlink/preprocess/document.h"

namespace medlink {

// A candidate span with its ranked matches (and, after linking, their
// probabilities).
struct SpanCandidates {
  CandidateSpan span;
  std::vector<LexicalMatch> matches;
};

json MatchToJson(const LexicalMatch &m);
LexicalMatch MatchFromJson(const json &j);
json SpanCandidatesToJson(const SpanCandidates &s);
SpanCandidates SpanCandidatesFromJson(const json &j);

void WriteSpanCandidates(const std::string &path,
                         const std::vector<SpanCandidates> &spans);
std::vector<SpanCandidates> ReadSpanCandidates(const std::string &path);

// Candidate generation over documents: every candidate span with its top-k_m
// matches. Spans without matches are kept with an empty list.
std::vector<SpanCandidates> GenerateCandidates(const std::vector<Document> &docs,
                                               const LexicalMatcher &matcher,
                                               const StopList &stop_words,
                                               int k_s, int k_m);

// Matches for the gold mention spans of the documents (for recall@k and
// linker training).
std::vector<SpanCandidates> GenerateGoldSpanCandidates(
    const std::vector<Document> &docs, const LexicalMatcher &matcher, int k_m);

}  // namespace medlink

#endif  // MEDLINK_CANDGEN_CANDIDATES_IO_H_
