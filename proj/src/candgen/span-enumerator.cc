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

#include "medlink/candgen/span-enumerator.h"

#include "medlink/base/error.h"
#include "medlink/base/text.h"

namespace medlink {

bool IsSpanBoundaryToken(const std::string &token, const StopList &stop_words) {
  return !token.empty() && !IsPunctToken(token) && !stop_words.Contains(token);
}

std::vector<CandidateSpan> EnumerateCandidateSpans(const Document &doc, int k_s,
                                                   const StopList &stop_words) {
  if (k_s < 1) throw Error("span length limit must be positive");
  std::vector<CandidateSpan> spans;
  for (int s = 0; s < static_cast<int>(doc.sentences.size()); ++s) {
    int n = doc.sentences[s].size();
    std::vector<bool> ok(n);
    for (int i = 0; i < n; ++i) {
      ok[i] = IsSpanBoundaryToken(doc.At(s, i).text, stop_words);
    }
    for (int start = 0; start < n; ++start) {
      if (!ok[start]) continue;
      for (int end = start + 1; end <= std::min(n, start + k_s); ++end) {
        if (!ok[end - 1]) continue;
        spans.push_back(
            {doc.id, s, start, end, std::string(doc.SpanText(s, start, end))});
      }
    }
  }
  return spans;
}

}  // namespace medlink
