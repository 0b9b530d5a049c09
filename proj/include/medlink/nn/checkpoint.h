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

#ifndef MEDLINK_NN_CHECKPOINT_H_
#define MEDLINK_NN_CHECKPOINT_H_

#include <memory>
#include <string>

#include "medlink/base/io.h"
#include "medlink/nn/scoring-model.h"

namespace medlink {

// Binary checkpoint: magic and version, model config (JSON, including the
// model kind), metadata (JSON), vocabulary, then every tensor as name, shape,
// dtype and raw values. Save and load round-trip bit-exactly.
template <typename T>
void SaveCheckpoint(const std::string &path, const ScoringModel<T> &model,
                    const json &metadata = json::object());

struct CheckpointHeader {
  ModelConfig config;
  json metadata;
  Vocabulary vocab;
};

CheckpointHeader ReadCheckpointHeader(const std::string &path);

// Loads a checkpoint into a model of precision T (values are converted if
// the file holds the other precision).
template <typename T>
std::unique_ptr<ScoringModel<T>> LoadCheckpoint(const std::string &path,
                                                json *metadata = nullptr);

}  // namespace medlink

#endif  // MEDLINK_NN_CHECKPOINT_H_
