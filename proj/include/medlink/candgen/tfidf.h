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

#ifndef MEDLINK_CANDGEN_TFIDF_H_
#define MEDLINK_CANDGEN_TFIDF_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "medlink/base/io.h"
#include "medlink/candgen/lemmatizer.h"

namespace medlink {

// Sparse vector with strictly increasing feature ids.
struct SparseVector {
  std::vector<int32_t> ids;
  std::vector<double> values;

  bool empty() const { return ids.empty(); }
  size_t size() const { return ids.size(); }
};

// Dot product accumulated in increasing feature order.
double Dot(const SparseVector &a, const SparseVector &b);

enum class TfidfMode : uint8_t { kCharNgrams = 0, kWords = 1 };

// TF-IDF over character n-grams or word unigrams of normalized text. The
// vocabulary keeps the most frequent features (total term frequency, ties in
// lexicographic order); feature ids follow lexicographic order. Weights are
// raw counts times idf = ln((1 + N) / (1 + df)) + 1, L2-normalized.
class TfidfVectorizer {
 public:
  TfidfVectorizer() = default;
  TfidfVectorizer(TfidfMode mode, int max_features, int min_n = 2,
                  int max_n = 5);

  // Input texts must already be normalized (Lemmatizer::Normalize).
  void Fit(const std::vector<std::string> &texts);

  // Raw features of a normalized text, with repetitions.
  std::vector<std::string> Features(std::string_view text) const;

  SparseVector Transform(std::string_view text) const;

  TfidfMode mode() const { return mode_; }
  int max_features() const { return max_features_; }
  int num_features() const { return static_cast<int>(vocabulary_.size()); }
  const std::vector<std::string> &vocabulary() const { return vocabulary_; }
  const std::vector<double> &idf() const { return idf_; }
  // Feature id or -1.
  int FeatureId(std::string_view feature) const;

  void Write(BinaryWriter *w) const;
  void Read(BinaryReader *r);

 private:
  void BuildLookup();

  TfidfMode mode_ = TfidfMode::kCharNgrams;
  int max_features_ = 200000;
  int min_n_ = 2;
  int max_n_ = 5;
  std::vector<std::string> vocabulary_;
  std::vector<double> idf_;
  std::unordered_map<std::string, int32_t> lookup_;
};

struct VectorizerOptions {
  int max_char_features = 200000;
  int max_word_features = 200000;
  int min_n = 2;
  int max_n = 5;
  bool lemmatize = true;
};

// Both vectorizers plus the lemmatizer used to normalize their input.
class Vectorizers {
 public:
  Vectorizers() = default;

  // Fits on raw alias names; throws if the list is empty.
  static Vectorizers Fit(const std::vector<std::string> &names,
                         const VectorizerOptions &options);

  SparseVector CharVector(std::string_view raw_text) const;
  SparseVector WordVector(std::string_view raw_text) const;

  const Lemmatizer &lemmatizer() const { return lemmatizer_; }
  const TfidfVectorizer &chars() const { return chars_; }
  const TfidfVectorizer &words() const { return words_; }

  void Save(const std::string &path) const;
  static Vectorizers Load(const std::string &path);

 private:
  Lemmatizer lemmatizer_;
  TfidfVectorizer chars_;
  TfidfVectorizer words_;
};

}  // namespace medlink

#endif  // MEDLINK_CANDGEN_TFIDF_H_
