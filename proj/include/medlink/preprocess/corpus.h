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

#ifndef MEDLINK_PREPROCESS_CORPUS_H_
#define MEDLINK_PREPROCESS_CORPUS_H_

#include <map>
#include <string>
#include <vector>

#include "medlink/base/io.h"
#include "medlink/preprocess/abbreviations.h"
#include "medlink/preprocess/document.h"
#include "medlink/preprocess/tokenizer.h"

namespace medlink {

struct PreprocessOptions {
  TokenizerOptions tokenizer;
  // Run the built-in abbreviation detector on documents without external
  // definitions.
  bool detect_abbreviations = true;
  // External definitions keyed by document id.
  std::map<std::string, std::vector<AbbrevDefinition>> external_abbreviations;
};

struct PreprocessReport {
  int documents = 0;
  int sentences = 0;
  int tokens = 0;
  int raw_mentions = 0;
  int kept_mentions = 0;
  int abbreviation_definitions = 0;
  int abbreviation_replacements = 0;
  int abbreviation_conflicts = 0;
  int dropped_at_definition = 0;   // short form removed at the definition site
  int dropped_unaligned = 0;       // no token covers the mention
  int dropped_overlap = 0;         // lost to overlap resolution
  int merged_sentences = 0;        // sentence breaks removed inside mentions

  int dropped() const {
    return dropped_at_definition + dropped_unaligned + dropped_overlap;
  }
  json ToJson() const;
};

// Abbreviation expansion, tokenization, sentence splitting, token alignment
// of mentions and overlap resolution for one document.
Document PreprocessDocument(const RawDocument &raw,
                            const PreprocessOptions &options,
                            PreprocessReport *report);

std::vector<Document> PreprocessCorpus(const std::vector<RawDocument> &raw,
                                       const PreprocessOptions &options,
                                       PreprocessReport *report);

}  // namespace medlink

#endif  // MEDLINK_PREPROCESS_CORPUS_H_
