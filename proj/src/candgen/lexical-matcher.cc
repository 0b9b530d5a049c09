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

#include "medlink/candgen/lexical-matcher.h"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "medlink/base/error.h"

namespace medlink {

namespace {

constexpr char kIndexMagic[4] = {'M', 'L', 'I', 'X'};
constexpr uint32_t kIndexVersion = 1;

// Per-thread score accumulators reused across queries.
struct Scratch {
  std::vector<double> char_score;
  std::vector<double> word_score;
  std::vector<uint8_t> seen;
  std::vector<uint32_t> touched;

  void Reset(size_t n) {
    if (char_score.size() < n) {
      char_score.assign(n, 0.0);
      word_score.assign(n, 0.0);
      seen.assign(n, 0);
    }
    touched.clear();
  }
  void Clear() {
    for (uint32_t a : touched) {
      char_score[a] = 0.0;
      word_score[a] = 0.0;
      seen[a] = 0;
    }
    touched.clear();
  }
};

}  // namespace

bool MatchOrder(const LexicalMatch &a, const LexicalMatch &b) {
  if (a.name_type != b.name_type) return a.name_type < b.name_type;
  if (a.score != b.score) return a.score > b.score;
  if (a.entity_id != b.entity_id) return a.entity_id < b.entity_id;
  return a.alias < b.alias;
}

void SortAndDeduplicate(std::vector<LexicalMatch> *matches, int k_m) {
  std::sort(matches->begin(), matches->end(), MatchOrder);
  std::unordered_set<std::string> entities;
  std::vector<LexicalMatch> kept;
  for (LexicalMatch &m : *matches) {
    if (static_cast<int>(kept.size()) >= k_m) break;
    if (entities.insert(m.entity_id).second) kept.push_back(std::move(m));
  }
  *matches = std::move(kept);
}

LexicalMatcher::LexicalMatcher(const AliasTable *table, Vectorizers vectorizers,
                               double k_w)
    : LexicalMatcher(table, std::move(vectorizers), k_w, true) {}

LexicalMatcher::LexicalMatcher(const AliasTable *table, Vectorizers vectorizers,
                               double k_w, bool build)
    : table_(table), vectorizers_(std::move(vectorizers)), k_w_(k_w) {
  if (k_w < 0.0) throw Error("word weight must be non-negative");
  if (build) BuildIndex();
}

void LexicalMatcher::BuildIndex() {
  char_postings_.assign(vectorizers_.chars().num_features(), {});
  word_postings_.assign(vectorizers_.words().num_features(), {});
  const auto &entries = table_->entries();
  for (uint32_t a = 0; a < entries.size(); ++a) {
    SparseVector c = vectorizers_.CharVector(entries[a].name);
    for (size_t i = 0; i < c.size(); ++i) {
      char_postings_[c.ids[i]].push_back({a, c.values[i]});
    }
    SparseVector w = vectorizers_.WordVector(entries[a].name);
    for (size_t i = 0; i < w.size(); ++i) {
      word_postings_[w.ids[i]].push_back({a, w.values[i]});
    }
  }
}

int64_t LexicalMatcher::num_postings() const {
  int64_t n = 0;
  for (const auto &list : char_postings_) n += static_cast<int64_t>(list.size());
  for (const auto &list : word_postings_) n += static_cast<int64_t>(list.size());
  return n;
}

double LexicalMatcher::Similarity(std::string_view a, std::string_view b) const {
  double cos_c = Dot(vectorizers_.CharVector(a), vectorizers_.CharVector(b));
  double cos_w = Dot(vectorizers_.WordVector(a), vectorizers_.WordVector(b));
  return Combine(cos_c, cos_w);
}

LexicalMatch LexicalMatcher::MakeMatch(uint32_t alias, double score) const {
  const AliasEntry &e = table_->entries()[alias];
  LexicalMatch m;
  m.score = score;
  m.alias = e.name;
  m.entity_id = e.entity_id;
  m.type_id = e.type.id;
  m.type_name = e.type.name;
  m.name_type = e.name_type;
  return m;
}

std::vector<LexicalMatch> LexicalMatcher::Generate(std::string_view span_text,
                                                   int k_m) const {
  thread_local Scratch scratch;
  scratch.Reset(table_->size());
  SparseVector qc = vectorizers_.CharVector(span_text);
  SparseVector qw = vectorizers_.WordVector(span_text);
  auto accumulate = [&](const SparseVector &q, const PostingLists &postings,
                        std::vector<double> &acc) {
    for (size_t i = 0; i < q.size(); ++i) {
      double qv = q.values[i];
      for (const Posting &p : postings[q.ids[i]]) {
        acc[p.alias] += qv * p.weight;
        if (!scratch.seen[p.alias]) {
          scratch.seen[p.alias] = 1;
          scratch.touched.push_back(p.alias);
        }
      }
    }
  };
  accumulate(qc, char_postings_, scratch.char_score);
  accumulate(qw, word_postings_, scratch.word_score);

  std::vector<LexicalMatch> matches;
  for (uint32_t a : scratch.touched) {
    double s = Combine(scratch.char_score[a], scratch.word_score[a]);
    if (s > 0.0) matches.push_back(MakeMatch(a, s));
  }
  scratch.Clear();
  SortAndDeduplicate(&matches, k_m);
  return matches;
}

std::vector<LexicalMatch> LexicalMatcher::GenerateBruteForce(
    std::string_view span_text, int k_m) const {
  SparseVector qc = vectorizers_.CharVector(span_text);
  SparseVector qw = vectorizers_.WordVector(span_text);
  std::vector<LexicalMatch> matches;
  const auto &entries = table_->entries();
  for (uint32_t a = 0; a < entries.size(); ++a) {
    double cos_c = Dot(qc, vectorizers_.CharVector(entries[a].name));
    double cos_w = Dot(qw, vectorizers_.WordVector(entries[a].name));
    double s = Combine(cos_c, cos_w);
    if (s > 0.0) matches.push_back(MakeMatch(a, s));
  }
  SortAndDeduplicate(&matches, k_m);
  return matches;
}

void LexicalMatcher::SaveIndex(const std::string &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  BinaryWriter w(&out);
  WriteHeader(&w, kIndexMagic, kIndexVersion);
  w.Put<uint64_t>(table_->Fingerprint());
  w.Put<uint64_t>(table_->size());
  for (const PostingLists *lists : {&char_postings_, &word_postings_}) {
    w.Put<uint64_t>(lists->size());
    for (const auto &list : *lists) {
      w.Put<uint64_t>(list.size());
      for (const Posting &p : list) {
        w.Put<uint32_t>(p.alias);
        w.Put<double>(p.weight);
      }
    }
  }
  if (!out) throw Error("write failed: " + path);
}

LexicalMatcher LexicalMatcher::LoadIndex(const std::string &path,
                                         const AliasTable *table,
                                         Vectorizers vectorizers, double k_w) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  BinaryReader r(&in);
  r.ExpectHeader(kIndexMagic, kIndexVersion);
  if (r.Get<uint64_t>() != table->Fingerprint()) {
    throw Error(path + ": index was built for a different alias table");
  }
  if (r.Get<uint64_t>() != table->size()) {
    throw Error(path + ": alias count mismatch");
  }
  LexicalMatcher m(table, std::move(vectorizers), k_w, false);
  size_t expected[2] = {
      static_cast<size_t>(m.vectorizers_.chars().num_features()),
      static_cast<size_t>(m.vectorizers_.words().num_features())};
  PostingLists *lists[2] = {&m.char_postings_, &m.word_postings_};
  for (int k = 0; k < 2; ++k) {
    auto n = r.Get<uint64_t>();
    if (n != expected[k]) throw Error(path + ": feature count mismatch");
    lists[k]->resize(n);
    for (auto &list : *lists[k]) {
      auto len = r.Get<uint64_t>();
      if (len > table->size()) throw Error(path + ": corrupt posting list");
      list.resize(len);
      for (Posting &p : list) {
        p.alias = r.Get<uint32_t>();
        p.weight = r.Get<double>();
        if (p.alias >= table->size()) throw Error(path + ": corrupt posting");
      }
    }
  }
  return m;
}

}  // namespace medlink
