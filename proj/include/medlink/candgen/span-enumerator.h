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

#ifndef MEDLINK_CANDGEN_SPAN_ENUMERATOR_H_
#define MEDLINK_CANDGEN_SPAN_ENUMERATOR_H_

#include <string>
#include <vector>

#include "medlink/candgen/stop-words.h"
#include "medlink/preprocess/document.h"

namespace medlink {

// Token span [start, end) of one sentence.
struct CandidateSpan {
  std::string doc_id;
  int sentence = 0;
  int start = 0;
  int end = 0;
  std::string text;

  int length() const { return end - start; }
  bool SameSpan(const CandidateSpan &o) const {
    return doc_id == o.doc_id && sentence == o.sentence && start == o.start &&
           end == o.end;
  }
};

// True if the token may begin or end a candidate span.
bool IsSpanBoundaryToken(const std::string &token, const StopList &stop_words);

// All spans of at most k_s tokens inside one sentence whose first and last
// tokens are neither stop words nor punctuation, ordered by sentence, start,
// then end.
std::vector<CandidateSpan> EnumerateCandidateSpans(const Document &doc, int k_s,
                                                   const StopList &stop_words);

}  // namespace medlink

#endif  // MEDLINK_CANDGEN_SPAN_ENUMERATOR_H_
