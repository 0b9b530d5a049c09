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

#ifndef MEDLINK_EVAL_REPORT_H_
#define MEDLINK_EVAL_REPORT_H_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "medlink/eval/metrics.h"

namespace medlink {

struct EvaluationOptions {
  bool breakdowns = false;
  // Entities seen in training gold; enables the seen/unseen breakdown.
  std::optional<std::set<std::string>> seen_entities;
};

struct EvaluationReport {
  PrfReport mention;
  PrfReport document;
  PrfReport ner;
  PrfReport raw_lower_bound;
  int64_t dropped_mentions = 0;
  std::optional<SubsetReport> seen;
  std::optional<SubsetReport> unseen;
  std::optional<PrfReport> acronym;
  std::optional<ErrorBreakdown> errors;

  json ToJson() const;
  // Plain-text tables with aligned columns.
  std::string ToTable() const;
};

EvaluationReport Evaluate(const std::vector<Document> &gold,
                          const std::vector<Prediction> &preds,
                          const EvaluationOptions &options);

// Left-aligned first column, right-aligned others, padded to the widest
// cell.
std::string FormatTable(const std::vector<std::string> &header,
                        const std::vector<std::vector<std::string>> &rows);

std::string FormatRatio(double x, int digits = 3);

// "k,recall" lines with a header.
std::string RecallAtKCsv(const std::vector<std::pair<int, double>> &recall);

}  // namespace medlink

#endif  // MEDLINK_EVAL_REPORT_H_
