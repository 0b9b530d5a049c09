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

#include "medlink/nn/checkpoint.h"

#include <fstream>

#include "medlink/base/error.h"

namespace medlink {

namespace {

constexpr char kCheckpointMagic[4] = {'M', 'L', 'C', 'K'};
constexpr uint32_t kCheckpointVersion = 1;

template <typename T>
constexpr uint8_t DtypeCode() {
  return std::is_same_v<T, float> ? 0 : 1;
}

CheckpointHeader ReadHeader(BinaryReader *r) {
  r->ExpectHeader(kCheckpointMagic, kCheckpointVersion);
  CheckpointHeader h;
  h.config = ModelConfig::FromJson(json::parse(r->GetString()));
  h.metadata = json::parse(r->GetString());
  auto n = r->Get<uint64_t>();
  std::vector<std::string> tokens;
  for (uint64_t i = 0; i < n; ++i) tokens.push_back(r->GetString());
  h.vocab = Vocabulary(std::move(tokens));
  return h;
}

template <typename T, typename U>
void ReadValues(BinaryReader *r, Tensor<T> *t) {
  std::vector<U> raw(t->value.size());
  r->GetArray(raw.data(), raw.size());
  for (size_t i = 0; i < raw.size(); ++i) {
    t->value.data()[i] = static_cast<T>(raw[i]);
  }
}

}  // namespace

template <typename T>
void SaveCheckpoint(const std::string &path, const ScoringModel<T> &model,
                    const json &metadata) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  BinaryWriter w(&out);
  WriteHeader(&w, kCheckpointMagic, kCheckpointVersion);
  w.PutString(model.config().ToJson().dump());
  w.PutString(metadata.dump());
  const auto &tokens = model.vocab().tokens();
  w.Put<uint64_t>(tokens.size() - Vocabulary::kNumSpecial);
  for (size_t i = Vocabulary::kNumSpecial; i < tokens.size(); ++i) {
    w.PutString(tokens[i]);
  }
  const auto &tensors = model.params().tensors();
  w.Put<uint64_t>(tensors.size());
  for (const Tensor<T> &t : tensors) {
    w.PutString(t.name);
    w.Put<int64_t>(t.value.rows());
    w.Put<int64_t>(t.value.cols());
    w.Put<uint8_t>(DtypeCode<T>());
    w.PutArray(t.value.data(), static_cast<size_t>(t.value.size()));
  }
  if (!out) throw Error("write failed: " + path);
}

CheckpointHeader ReadCheckpointHeader(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  BinaryReader r(&in);
  return ReadHeader(&r);
}

template <typename T>
std::unique_ptr<ScoringModel<T>> LoadCheckpoint(const std::string &path,
                                                json *metadata) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  BinaryReader r(&in);
  CheckpointHeader h = ReadHeader(&r);
  auto model = std::make_unique<ScoringModel<T>>(h.config, std::move(h.vocab));
  auto &tensors = model->params().tensors();
  auto n = r.Get<uint64_t>();
  if (n != tensors.size()) throw Error(path + ": tensor count mismatch");
  for (Tensor<T> &t : tensors) {
    std::string name = r.GetString();
    auto rows = r.Get<int64_t>();
    auto cols = r.Get<int64_t>();
    auto dtype = r.Get<uint8_t>();
    if (name != t.name || rows != t.value.rows() || cols != t.value.cols()) {
      throw Error(path + ": unexpected tensor " + name);
    }
    if (dtype == 0) {
      ReadValues<T, float>(&r, &t);
    } else if (dtype == 1) {
      ReadValues<T, double>(&r, &t);
    } else {
      throw Error(path + ": unknown dtype");
    }
  }
  if (metadata != nullptr) *metadata = std::move(h.metadata);
  return model;
}

template void SaveCheckpoint<float>(const std::string &,
                                    const ScoringModel<float> &, const json &);
template void SaveCheckpoint<double>(const std::string &,
                                     const ScoringModel<double> &, const json &);
template std::unique_ptr<ScoringModel<float>> LoadCheckpoint<float>(
    const std::string &, json *);
template std::unique_ptr<ScoringModel<double>> LoadCheckpoint<double>(
    const std::string &, json *);

}  // namespace medlink
