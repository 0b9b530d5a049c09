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

#include "medlink/preprocess/abbreviations.h"

#include <algorithm>
#include <cctype>

#include "medlink/base/error.h"
#include "medlink/base/io.h"
#include "medlink/base/text.h"

namespace medlink {

namespace {

constexpr size_t kMinShortForm = 2;
constexpr size_t kMaxShortForm = 10;

char Lower(char c) { return IsUpper(c) ? static_cast<char>(c - 'A' + 'a') : c; }
bool IsAlnum(char c) { return IsAsciiAlpha(c) || IsDigit(c); }

int CountWords(std::string_view s) {
  int words = 0;
  bool in_word = false;
  for (char c : s) {
    if (IsSpace(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++words;
    }
  }
  return words;
}

bool ValidShortForm(std::string_view sf) {
  if (sf.size() < kMinShortForm || sf.size() > kMaxShortForm) return false;
  if (!IsAlnum(sf[0])) return false;
  if (CountWords(sf) > 2) return false;
  return std::any_of(sf.begin(), sf.end(), IsAsciiAlpha);
}

bool IsWordBoundary(std::string_view text, int begin, int end) {
  bool left = begin == 0 || !IsWordChar(text[begin - 1]);
  bool right = end == static_cast<int>(text.size()) || !IsWordChar(text[end]);
  return left && right;
}

struct Edit {
  int begin;
  int end;
  std::string replacement;
  bool removal;
};

int Delta(const Edit &e) {
  return static_cast<int>(e.replacement.size()) - (e.end - e.begin);
}

int MapStart(const std::vector<Edit> &edits, int pos) {
  int delta = 0;
  for (const Edit &e : edits) {
    if (e.end <= pos) {
      delta += Delta(e);
    } else if (e.begin <= pos) {
      return e.begin + delta;
    } else {
      break;
    }
  }
  return pos + delta;
}

int MapEnd(const std::vector<Edit> &edits, int pos) {
  int delta = 0;
  for (const Edit &e : edits) {
    if (e.end <= pos) {
      delta += Delta(e);
    } else if (e.begin < pos) {
      return e.begin + delta + static_cast<int>(e.replacement.size());
    } else {
      break;
    }
  }
  return pos + delta;
}

}  // namespace

std::optional<std::string> AlignLongForm(std::string_view short_form,
                                         std::string_view window) {
  int s = static_cast<int>(short_form.size()) - 1;
  int l = static_cast<int>(window.size()) - 1;
  while (s >= 0) {
    char c = Lower(short_form[s]);
    if (!IsAlnum(c)) {
      --s;
      continue;
    }
    // The first short-form character must start a word.
    while (l >= 0 && (Lower(window[l]) != c ||
                      (s == 0 && l > 0 && IsAlnum(window[l - 1])))) {
      --l;
    }
    if (l < 0) return std::nullopt;
    --l;
    --s;
  }
  size_t start = static_cast<size_t>(l + 1);
  size_t space = window.rfind(' ', start);
  start = space == std::string_view::npos ? 0 : space + 1;
  std::string_view lf = Trim(window.substr(start));
  if (lf.empty()) return std::nullopt;
  return std::string(lf);
}

std::vector<AbbrevDefinition> DetectAbbreviations(std::string_view text) {
  std::vector<AbbrevDefinition> defs;
  int last_end = 0;
  size_t i = 0;
  while (true) {
    size_t open = text.find('(', i);
    if (open == std::string_view::npos) break;
    size_t close = text.find(')', open + 1);
    if (close == std::string_view::npos) break;
    i = open + 1;
    std::string_view inner = text.substr(open + 1, close - open - 1);
    if (inner.find('(') != std::string_view::npos) continue;
    std::string_view sf = Trim(inner);
    if (!ValidShortForm(sf)) continue;

    // Window of preceding words, not crossing brackets or clause breaks.
    size_t wend = open;
    while (wend > 0 && IsSpace(text[wend - 1])) --wend;
    size_t max_words = std::min(sf.size() + 5, 2 * sf.size());
    size_t wstart = wend;
    size_t words = 0;
    bool in_word = false;
    while (wstart > 0) {
      char c = text[wstart - 1];
      if (c == '(' || c == ')' || c == ';' || c == '[' || c == ']') break;
      if (IsSpace(c)) {
        if (in_word && ++words == max_words) break;
        in_word = false;
      } else {
        in_word = true;
      }
      --wstart;
    }
    std::string_view window = text.substr(wstart, wend - wstart);
    auto lf = AlignLongForm(sf, window);
    if (!lf || lf->size() <= sf.size()) continue;
    int offset = static_cast<int>(wend - lf->size());
    if (offset < last_end) continue;
    AbbrevDefinition def;
    def.short_form = std::string(sf);
    def.long_form = *lf;
    def.offset = offset;
    def.site_end = static_cast<int>(close + 1);
    last_end = def.site_end;
    defs.push_back(std::move(def));
    i = close + 1;
  }
  return defs;
}

void LocateDefinitions(std::string_view text,
                       std::vector<AbbrevDefinition> *defs) {
  for (AbbrevDefinition &def : *defs) {
    if (def.offset >= 0 || def.long_form.empty()) continue;
    size_t pos = 0;
    while ((pos = text.find(def.long_form, pos)) != std::string_view::npos) {
      size_t k = pos + def.long_form.size();
      while (k < text.size() && IsSpace(text[k])) ++k;
      if (k < text.size() && text[k] == '(') {
        size_t close = text.find(')', k + 1);
        if (close != std::string_view::npos &&
            Trim(text.substr(k + 1, close - k - 1)) == def.short_form) {
          def.offset = static_cast<int>(pos);
          def.site_end = static_cast<int>(close + 1);
          break;
        }
      }
      ++pos;
    }
  }
}

ExpandedText ExpandAbbreviations(const RawDocument &doc,
                                 const std::vector<AbbrevDefinition> &defs,
                                 ExpansionStats *stats) {
  ExpansionStats local;
  if (stats == nullptr) stats = &local;
  std::string text = doc.Text();
  int title_len = static_cast<int>(doc.title.size());

  std::vector<Edit> edits;
  for (const AbbrevDefinition &def : defs) {
    if (def.offset < 0) continue;
    int long_end = def.offset + static_cast<int>(def.long_form.size());
    edits.push_back({long_end, def.site_end, "", true});
  }
  for (const AbbrevDefinition &def : defs) {
    if (def.short_form.empty()) continue;
    size_t pos = 0;
    while ((pos = text.find(def.short_form, pos)) != std::string::npos) {
      int b = static_cast<int>(pos);
      int e = b + static_cast<int>(def.short_form.size());
      pos = e;
      if (!IsWordBoundary(text, b, e)) continue;
      bool in_site = false;
      for (const AbbrevDefinition &other : defs) {
        if (other.offset >= 0 && b < other.site_end && e > other.offset) {
          in_site = true;
        }
      }
      if (in_site) continue;
      edits.push_back({b, e, def.long_form, false});
    }
  }

  // Leftmost edit wins; overlapping edits are skipped.
  std::stable_sort(edits.begin(), edits.end(), [](const Edit &a, const Edit &b) {
    return a.begin != b.begin ? a.begin < b.begin : a.end < b.end;
  });
  std::vector<Edit> accepted;
  for (Edit &e : edits) {
    if (!accepted.empty() && e.begin < accepted.back().end) {
      ++stats->conflicts;
      continue;
    }
    accepted.push_back(std::move(e));
  }
  for (const Edit &e : accepted) {
    if (e.removal) {
      ++stats->definitions;
    } else {
      ++stats->replacements;
    }
  }

  ExpandedText out;
  int cursor = 0;
  for (const Edit &e : accepted) {
    out.text.append(text, cursor, e.begin - cursor);
    out.text.append(e.replacement);
    cursor = e.end;
  }
  out.text.append(text, cursor, std::string::npos);
  out.title_end = MapStart(accepted, title_len);

  for (const RawMention &m : doc.mentions) {
    bool dropped = false;
    for (const Edit &e : accepted) {
      if (e.removal && m.begin >= e.begin && m.end <= e.end) dropped = true;
    }
    int b = MapStart(accepted, m.begin);
    int e = MapEnd(accepted, m.end);
    if (dropped || e <= b) {
      ++stats->dropped_mentions;
      continue;
    }
    RawMention moved = m;
    moved.begin = b;
    moved.end = e;
    moved.text = out.text.substr(b, e - b);
    out.mentions.push_back(std::move(moved));
  }
  return out;
}

std::map<std::string, std::vector<AbbrevDefinition>> ReadAbbrevTsv(
    const std::string &path) {
  std::map<std::string, std::vector<AbbrevDefinition>> defs;
  for (const std::string &line : ReadLines(path)) {
    if (Trim(line).empty() || line[0] == '#') continue;
    auto fields = Split(line, '\t');
    if (fields.size() != 3) {
      throw Error(path + ": expected 'doc_id TAB short TAB long': " + line);
    }
    AbbrevDefinition def;
    def.short_form = std::string(Trim(fields[1]));
    def.long_form = std::string(Trim(fields[2]));
    defs[std::string(Trim(fields[0]))].push_back(std::move(def));
  }
  return defs;
}

}  // namespace medlink
