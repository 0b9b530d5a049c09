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

#ifndef MEDLINK_PREPROCESS_ABBREVIATIONS_H_
#define MEDLINK_PREPROCESS_ABBREVIATIONS_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "medlink/preprocess/document.h"

namespace medlink {

// An in-text definition "long form (short form)".
struct AbbrevDefinition {
  std::string short_form;
  std::string long_form;
  // Character offset of the long form; -1 when the definition site is not
  // known (definitions injected from an external file that could not be
  // located in the text).
  int offset = -1;
  // End of the closing parenthesis of the definition site.
  int site_end = -1;

  bool operator==(const AbbrevDefinition &other) const = default;
};

// Finds "long form (SF)" definitions with a simplified Schwartz-Hearst
// alignment: every alphanumeric character of the short form must be matched
// right-to-left inside the preceding words, with the first one at the start
// of a word. Definitions are returned left to right, non-overlapping.
std::vector<AbbrevDefinition> DetectAbbreviations(std::string_view text);

// Best long form for a short form within a window of preceding text, or
// nullopt if the characters do not align.
std::optional<std::string> AlignLongForm(std::string_view short_form,
                                         std::string_view window);

// Locates the definition site of externally supplied definitions.
void LocateDefinitions(std::string_view text,
                       std::vector<AbbrevDefinition> *defs);

struct ExpansionStats {
  int definitions = 0;
  int replacements = 0;
  int dropped_mentions = 0;  // mentions on the removed "(SF)" at a site
  int conflicts = 0;         // overlapping replacements skipped
};

// Document text with mentions after abbreviation expansion.
struct ExpandedText {
  std::string text;
  int title_end = 0;
  std::vector<RawMention> mentions;
};

// Rewrites the document text: each definition site "long (short)" becomes
// "long" and every other occurrence of the short form becomes the long form.
// Mention offsets follow the edits; tags on a short form are carried over to
// its expansion.
ExpandedText ExpandAbbreviations(const RawDocument &doc,
                                 const std::vector<AbbrevDefinition> &defs,
                                 ExpansionStats *stats);

// External definition TSV: doc_id TAB short TAB long.
std::map<std::string, std::vector<AbbrevDefinition>> ReadAbbrevTsv(
    const std::string &path);

}  // namespace medlink

#endif  // MEDLINK_PREPROCESS_ABBREVIATIONS_H_
