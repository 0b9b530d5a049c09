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

#include "medlink/candgen/stop-words.h"

#include "medlink/base/io.h"
#include "medlink/base/text.h"

namespace medlink {

namespace {

const char *const kEnglishStopWords[] = {
    "a",         "about",   "above",   "after",     "again",   "against",
    "all",       "also",    "although", "am",       "among",   "an",
    "and",       "any",     "are",     "as",        "at",      "be",
    "because",   "been",    "before",  "being",     "below",   "between",
    "both",      "but",     "by",      "can",       "could",   "did",
    "do",        "does",    "doing",   "done",      "down",    "due",
    "during",    "each",    "either",  "else",      "etc",     "ever",
    "every",     "few",     "for",     "from",      "further", "had",
    "has",       "have",    "having",  "he",        "her",     "here",
    "hers",      "herself", "him",     "himself",   "his",     "how",
    "however",   "i",       "if",      "in",        "into",    "is",
    "it",        "its",     "itself",  "just",      "least",   "less",
    "may",       "me",      "might",   "more",      "most",    "much",
    "must",      "my",      "myself",  "neither",   "no",      "nor",
    "not",       "now",     "of",      "off",       "often",   "on",
    "once",      "only",    "or",      "other",     "others",  "otherwise",
    "our",       "ours",    "ourselves", "out",     "over",    "own",
    "per",       "rather",  "same",    "several",   "shall",   "she",
    "should",    "since",   "so",      "some",      "such",    "than",
    "that",      "the",     "their",   "theirs",    "them",    "themselves",
    "then",      "there",   "thereby", "therefore", "these",   "they",
    "this",      "those",   "though",  "through",   "thus",    "to",
    "too",       "under",   "until",   "up",        "upon",    "us",
    "very",      "via",     "was",     "we",        "were",    "what",
    "when",      "where",   "whereas", "whether",   "which",   "while",
    "who",       "whom",    "whose",   "why",       "will",    "with",
    "within",    "without", "would",   "yet",       "you",     "your",
};

}  // namespace

StopList::StopList(const std::vector<std::string> &words) {
  for (const std::string &w : words) {
    std::string t = ToLower(Trim(w));
    if (!t.empty()) words_.insert(std::move(t));
  }
}

StopList StopList::Default() {
  return StopList(std::vector<std::string>(std::begin(kEnglishStopWords),
                                           std::end(kEnglishStopWords)));
}

StopList StopList::Load(const std::string &path) {
  std::vector<std::string> words;
  for (const std::string &line : ReadLines(path)) {
    if (!line.empty() && line[0] != '#') words.push_back(line);
  }
  return StopList(words);
}

bool StopList::Contains(std::string_view token) const {
  return words_.find(ToLower(token)) != words_.end();
}

}  // namespace medlink
