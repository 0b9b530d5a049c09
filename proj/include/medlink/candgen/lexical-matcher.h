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

#ifndef MEDLINK_CANDGEN_LEXICAL_MATCHER_H_
#define MEDLINK_CANDGEN_LEXICAL_MATCHER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "medlink/candgen/tfidf.h"
#include "medlink/kb/alias-table.h"

namespace medlink {

struct LexicalMatch {
  double score = 0.0;  // S_M
  std::string alias;
  std::string entity_id;
  std::string type_id;
  std::string type_name;
  NameType name_type = NameType::kSynonym;
  // Linker probability, once the span has been linked.
  std::optional<double> p;

  bool operator==(const LexicalMatch &other) const = default;
};

// Candidate-list order: name type best first, then score descending, then
// entity id and alias for determinism.
bool MatchOrder(const LexicalMatch &a, const LexicalMatch &b);

// Sorts, keeps the first match per entity and truncates to k_m.
void SortAndDeduplicate(std::vector<LexicalMatch> *matches, int k_m);

// Lexical retrieval over an alias table: an inverted index over char n-gram
// and word features with exact score accumulation, so results equal
// brute-force scoring of every alias.
class LexicalMatcher {
 public:
  LexicalMatcher(const AliasTable *table, Vectorizers vectorizers,
                 double k_w = 0.5);

  // Combined similarity (cos_c + k_w * cos_w) / (1 + k_w) of two raw strings.
  double Similarity(std::string_view a, std::string_view b) const;

  // Top-k_m matches with S_M > 0.
  std::vector<LexicalMatch> Generate(std::string_view span_text, int k_m) const;

  // Reference implementation that scores every alias directly.
  std::vector<LexicalMatch> GenerateBruteForce(std::string_view span_text,
                                               int k_m) const;

  const AliasTable &table() const { return *table_; }
  const Vectorizers &vectorizers() const { return vectorizers_; }
  double k_w() const { return k_w_; }
  int64_t num_postings() const;

  // Index sidecar: format-versioned postings bound to the alias table by its
  // fingerprint.
  void SaveIndex(const std::string &path) const;
  static LexicalMatcher LoadIndex(const std::string &path,
                                  const AliasTable *table,
                                  Vectorizers vectorizers, double k_w = 0.5);

 private:
  struct Posting {
    uint32_t alias;
    double weight;
  };
  using PostingLists = std::vector<std::vector<Posting>>;

  LexicalMatcher(const AliasTable *table, Vectorizers vectorizers, double k_w,
                 bool build);
  void BuildIndex();
  LexicalMatch MakeMatch(uint32_t alias, double score) const;
  double Combine(double cos_c, double cos_w) const {
    return (cos_c + k_w_ * cos_w) / (1.0 + k_w_);
  }

  const AliasTable *table_;
  Vectorizers vectorizers_;
  double k_w_;
  PostingLists char_postings_;
  PostingLists word_postings_;
};

}  // namespace medlink

#endif  // MEDLINK_CANDGEN_LEXICAL_MATCHER_H_
