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

#ifndef MEDLINK_PIPELINE_CONFIG_H_
#define MEDLINK_PIPELINE_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "medlink/base/io.h"
#include "medlink/candgen/tfidf.h"
#include "medlink/linker/linker.h"
#include "medlink/nn/scoring-model.h"
#include "medlink/selector/selector.h"

namespace medlink {

// Every pipeline constant. Defaults are the full-scale settings; desk-scale
// runs override the model size and training schedule from a config file.
struct PipelineConfig {
  uint64_t seed = 13;

  // Candidate generation.
  int k_s = 10;
  double k_w = 0.5;
  int k_m = 50;
  VectorizerOptions vectorizers;
  std::string stop_words_file;  // empty: embedded list

  // Shared encoder and head shape for both scoring models.
  EncoderConfig encoder;
  HeadConfig head;
  int vocab_max_size = 0;
  int vocab_min_count = 1;

  // Span linker.
  int k_l = 1;
  TrainSchedule linker_train;

  // Span selector.
  SelectorConfig selector;
  std::vector<double> positive_weight_sweep = {1, 2, 5, 10, 20};
  TrainSchedule selector_train;

  PipelineConfig();

  // INI file with sections [general], [candgen], [encoder], [head], [vocab],
  // [linker] and [selector]; missing keys keep their defaults and unknown
  // keys are rejected.
  static PipelineConfig Load(const std::string &path);
  static PipelineConfig FromIniString(const std::string &text);

  ModelConfig LinkerModel() const;
  ModelConfig SelectorModel() const;

  json ToJson() const;
};

}  // namespace medlink

#endif  // MEDLINK_PIPELINE_CONFIG_H_
