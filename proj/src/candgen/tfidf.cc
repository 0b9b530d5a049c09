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

#include "medlink/candgen/tfidf.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "medlink/base/error.h"
#include "medlink/base/text.h"

namespace medlink {

namespace {

constexpr char kVectorizerMagic[4] = {'M', 'L', 'V', 'Z'};
constexpr uint32_t kVectorizerVersion = 1;

}  // namespace

double Dot(const SparseVector &a, const SparseVector &b) {
  double sum = 0.0;
  size_t i = 0, j = 0;
  while (i < a.ids.size() && j < b.ids.size()) {
    if (a.ids[i] < b.ids[j]) {
      ++i;
    } else if (a.ids[i] > b.ids[j]) {
      ++j;
    } else {
      sum += a.values[i] * b.values[j];
      ++i;
      ++j;
    }
  }
  return sum;
}

TfidfVectorizer::TfidfVectorizer(TfidfMode mode, int max_features, int min_n,
                                 int max_n)
    : mode_(mode), max_features_(max_features), min_n_(min_n), max_n_(max_n) {
  if (max_features <= 0 || min_n < 1 || max_n < min_n) {
    throw Error("invalid tf-idf vectorizer settings");
  }
}

std::vector<std::string> TfidfVectorizer::Features(std::string_view text) const {
  std::vector<std::string> features;
  if (mode_ == TfidfMode::kWords) {
    for (const std::string &piece : Split(text, ' ')) {
      if (!piece.empty() && IsWordChar(piece[0])) features.push_back(piece);
    }
    return features;
  }
  for (int n = min_n_; n <= max_n_; ++n) {
    if (text.size() < static_cast<size_t>(n)) break;
    for (size_t i = 0; i + n <= text.size(); ++i) {
      features.emplace_back(text.substr(i, n));
    }
  }
  return features;
}

void TfidfVectorizer::Fit(const std::vector<std::string> &texts) {
  std::map<std::string, std::pair<int64_t, int64_t>> stats;  // tf, df
  for (const std::string &text : texts) {
    std::vector<std::string> features = Features(text);
    std::sort(features.begin(), features.end());
    for (size_t i = 0; i < features.size();) {
      size_t j = i;
      while (j < features.size() && features[j] == features[i]) ++j;
      auto &s = stats[features[i]];
      s.first += static_cast<int64_t>(j - i);
      s.second += 1;
      i = j;
    }
  }
  std::vector<std::pair<const std::string *, int64_t>> ranked;
  ranked.reserve(stats.size());
  for (const auto &[feature, s] : stats) ranked.push_back({&feature, s.first});
  // The map is already in lexicographic order, so a stable sort by frequency
  // keeps ties lexicographic.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto &a, const auto &b) { return a.second > b.second; });
  if (ranked.size() > static_cast<size_t>(max_features_)) {
    ranked.resize(max_features_);
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const auto &a, const auto &b) { return *a.first < *b.first; });
  double n = static_cast<double>(texts.size());
  vocabulary_.clear();
  idf_.clear();
  for (const auto &[feature, tf] : ranked) {
    vocabulary_.push_back(*feature);
    double df = static_cast<double>(stats.at(*feature).second);
    idf_.push_back(std::log((1.0 + n) / (1.0 + df)) + 1.0);
  }
  BuildLookup();
}

void TfidfVectorizer::BuildLookup() {
  lookup_.clear();
  lookup_.reserve(vocabulary_.size());
  for (size_t i = 0; i < vocabulary_.size(); ++i) {
    lookup_.emplace(vocabulary_[i], static_cast<int32_t>(i));
  }
}

int TfidfVectorizer::FeatureId(std::string_view feature) const {
  auto it = lookup_.find(std::string(feature));
  return it == lookup_.end() ? -1 : it->second;
}

SparseVector TfidfVectorizer::Transform(std::string_view text) const {
  std::vector<int32_t> ids;
  for (const std::string &f : Features(text)) {
    auto it = lookup_.find(f);
    if (it != lookup_.end()) ids.push_back(it->second);
  }
  std::sort(ids.begin(), ids.end());
  SparseVector v;
  for (size_t i = 0; i < ids.size();) {
    size_t j = i;
    while (j < ids.size() && ids[j] == ids[i]) ++j;
    v.ids.push_back(ids[i]);
    v.values.push_back(static_cast<double>(j - i) * idf_[ids[i]]);
    i = j;
  }
  double norm = 0.0;
  for (double x : v.values) norm += x * x;
  norm = std::sqrt(norm);
  if (norm > 0.0) {
    for (double &x : v.values) x /= norm;
  }
  return v;
}

void TfidfVectorizer::Write(BinaryWriter *w) const {
  w->Put<uint8_t>(static_cast<uint8_t>(mode_));
  w->Put<int32_t>(max_features_);
  w->Put<int32_t>(min_n_);
  w->Put<int32_t>(max_n_);
  w->Put<uint64_t>(vocabulary_.size());
  for (const std::string &f : vocabulary_) w->PutString(f);
  w->PutVector(idf_);
}

void TfidfVectorizer::Read(BinaryReader *r) {
  mode_ = static_cast<TfidfMode>(r->Get<uint8_t>());
  max_features_ = r->Get<int32_t>();
  min_n_ = r->Get<int32_t>();
  max_n_ = r->Get<int32_t>();
  auto n = r->Get<uint64_t>();
  vocabulary_.clear();
  for (uint64_t i = 0; i < n; ++i) vocabulary_.push_back(r->GetString());
  idf_ = r->GetVector<double>();
  if (idf_.size() != vocabulary_.size()) {
    throw Error("vectorizer file: idf and vocabulary sizes differ");
  }
  BuildLookup();
}

Vectorizers Vectorizers::Fit(const std::vector<std::string> &names,
                             const VectorizerOptions &options) {
  if (names.empty()) throw Error("cannot fit vectorizers on an empty alias list");
  Vectorizers v;
  v.lemmatizer_ = Lemmatizer(options.lemmatize);
  v.chars_ = TfidfVectorizer(TfidfMode::kCharNgrams, options.max_char_features,
                             options.min_n, options.max_n);
  v.words_ = TfidfVectorizer(TfidfMode::kWords, options.max_word_features);
  std::vector<std::string> normalized;
  normalized.reserve(names.size());
  for (const std::string &name : names) {
    normalized.push_back(v.lemmatizer_.Normalize(name));
  }
  v.chars_.Fit(normalized);
  v.words_.Fit(normalized);
  return v;
}

SparseVector Vectorizers::CharVector(std::string_view raw_text) const {
  return chars_.Transform(lemmatizer_.Normalize(raw_text));
}

SparseVector Vectorizers::WordVector(std::string_view raw_text) const {
  return words_.Transform(lemmatizer_.Normalize(raw_text));
}

void Vectorizers::Save(const std::string &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  BinaryWriter w(&out);
  WriteHeader(&w, kVectorizerMagic, kVectorizerVersion);
  w.Put<uint8_t>(lemmatizer_.enabled() ? 1 : 0);
  chars_.Write(&w);
  words_.Write(&w);
  if (!out) throw Error("write failed: " + path);
}

Vectorizers Vectorizers::Load(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  BinaryReader r(&in);
  r.ExpectHeader(kVectorizerMagic, kVectorizerVersion);
  Vectorizers v;
  v.lemmatizer_ = Lemmatizer(r.Get<uint8_t>() != 0);
  v.chars_.Read(&r);
  v.words_.Read(&r);
  return v;
}

}  // namespace medlink
