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

#ifndef MEDLINK_PIPELINE_SYNTHETIC_H_
#define MEDLINK_PIPELINE_SYNTHETIC_H_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "medlink/kb/alias-table.h"
#include "medlink/preprocess/document.h"

namespace medlink {

// Generates a small ontology of pseudo-word concepts and abstracts that
// mention them. Names are built from consonant-vowel syllables so they never
// collide with English stop words; acronyms are consonant-only, so they share
// no character bigrams with the names. Each type has its own cue words, which
// is the only context that separates concepts sharing an acronym.
struct SyntheticOptions {
  int concepts = 200;
  int documents = 50;
  uint64_t seed = 7;
  int min_sentences = 2;  // abstract sentences, excluding the title
  int max_sentences = 4;
  double synonym_fraction = 0.5;         // concepts with a synonym
  double shared_acronym_fraction = 0.1;  // concepts reusing another acronym
  double acronym_mention_fraction = 0.3;
  double synonym_mention_fraction = 0.2;
  double two_mention_sentence_fraction = 0.5;
  double definition_fraction = 0.2;  // documents defining an abbreviation
};

struct SyntheticConcept {
  std::string id;
  std::string type_id;
  std::string name;
  std::string acronym;
  std::string synonym;  // may be empty
};

struct SyntheticData {
  std::vector<SyntheticConcept> concepts;
  std::vector<std::pair<std::string, std::string>> hierarchy;  // child, parent
  std::vector<std::pair<std::string, std::string>> types;      // id, name
  std::vector<RawDocument> documents;

  std::vector<OntologyRecord> OntologyRecords() const;
  // Writes ontology.tsv, hierarchy.tsv, types.tsv and corpus.pubtator.
  void Write(const std::string &dir) const;
};

SyntheticData GenerateSynthetic(const SyntheticOptions &options);

// Appends extra concepts with fresh names; documents are left unchanged.
void AddSyntheticConcepts(SyntheticData *data, int count, uint64_t seed);

}  // namespace medlink

#endif  // MEDLINK_PIPELINE_SYNTHETIC_H_
