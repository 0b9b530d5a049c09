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

#include "medlink/eval/report.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace medlink {

std::string FormatRatio(double x, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

std::string FormatTable(const std::vector<std::string> &header,
                        const std::vector<std::vector<std::string>> &rows) {
  std::vector<size_t> width(header.size(), 0);
  auto measure = [&](const std::vector<std::string> &row) {
    for (size_t i = 0; i < row.size() && i < width.size(); ++i) {
      width[i] = std::max(width[i], row[i].size());
    }
  };
  measure(header);
  for (const auto &row : rows) measure(row);
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string> &row) {
    for (size_t i = 0; i < width.size(); ++i) {
      std::string cell = i < row.size() ? row[i] : "";
      std::string pad(width[i] - cell.size(), ' ');
      if (i > 0) out << "  ";
      out << (i == 0 ? cell + pad : pad + cell);
    }
    out << '\n';
  };
  emit(header);
  size_t total = 0;
  for (size_t w : width) total += w;
  total += 2 * (width.empty() ? 0 : width.size() - 1);
  out << std::string(total, '-') << '\n';
  for (const auto &row : rows) emit(row);
  return out.str();
}

std::string RecallAtKCsv(const std::vector<std::pair<int, double>> &recall) {
  std::ostringstream out;
  out << "k,recall\n";
  for (const auto &[k, r] : recall) out << k << ',' << FormatRatio(r, 6) << '\n';
  return out.str();
}

EvaluationReport Evaluate(const std::vector<Document> &gold,
                          const std::vector<Prediction> &preds,
                          const EvaluationOptions &options) {
  EvaluationReport r;
  r.mention = MentionLevelPrf(gold, preds);
  r.document = DocumentLevelPrf(gold, preds);
  r.ner = NerPrf(gold, preds);
  for (const Document &d : gold) r.dropped_mentions += d.dropped_mentions;
  r.raw_lower_bound = RawCorpusLowerBound(r.mention, r.dropped_mentions);
  if (options.breakdowns) {
    if (options.seen_entities) {
      r.seen = SeenSubsetPrf(gold, preds, *options.seen_entities, true);
      r.unseen = SeenSubsetPrf(gold, preds, *options.seen_entities, false);
    }
    r.acronym = AcronymPrf(gold, preds);
    r.errors = BreakdownFalsePositives(gold, preds);
  }
  return r;
}

json EvaluationReport::ToJson() const {
  json j{{"mention", mention.ToJson()},
         {"document", document.ToJson()},
         {"ner", ner.ToJson()},
         {"raw_lower_bound", raw_lower_bound.ToJson()},
         {"dropped_mentions", dropped_mentions}};
  if (seen) {
    j["seen"] = {{"mention", seen->mention.ToJson()},
                 {"document", seen->document.ToJson()}};
  }
  if (unseen) {
    j["unseen"] = {{"mention", unseen->mention.ToJson()},
                   {"document", unseen->document.ToJson()}};
  }
  if (acronym) j["acronym"] = acronym->ToJson();
  if (errors) j["errors"] = errors->ToJson();
  return j;
}

std::string EvaluationReport::ToTable() const {
  auto row = [](const std::string &name, const PrfReport &r) {
    return std::vector<std::string>{name,
                                    FormatRatio(r.precision),
                                    FormatRatio(r.recall),
                                    FormatRatio(r.f1),
                                    std::to_string(r.tp),
                                    std::to_string(r.fp),
                                    std::to_string(r.fn)};
  };
  std::vector<std::vector<std::string>> rows = {
      row("Mention", mention), row("Document", document), row("NER", ner),
      row("Mention (raw lower bound)", raw_lower_bound)};
  if (seen) {
    rows.push_back(row("Seen (m)", seen->mention));
    rows.push_back(row("Unseen (m)", unseen->mention));
    rows.push_back(row("Seen (d)", seen->document));
    rows.push_back(row("Unseen (d)", unseen->document));
  }
  if (acronym) rows.push_back(row("Acronym matches", *acronym));
  std::string out = FormatTable({"Metric", "P", "R", "F1", "TP", "FP", "FN"},
                                rows);
  if (errors) {
    auto pct = [&](int64_t n) {
      return FormatRatio(100.0 * errors->Fraction(n), 1) + "%";
    };
    out += "\n";
    out += FormatTable(
        {"False positives (" + std::to_string(errors->false_positives) + ")",
         "Share"},
        {{"Correct span, bad entity", pct(errors->correct_span_bad_entity)},
         {"Correct span and type", pct(errors->correct_span_and_type)},
         {"Correct entity, true span overlaps prediction",
          pct(errors->correct_entity_overlapping)},
         {"Correct entity, true span inside prediction",
          pct(errors->correct_entity_contained)}});
  }
  return out;
}

}  // namespace medlink
