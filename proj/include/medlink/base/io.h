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

#ifndef MEDLINK_BASE_IO_H_
#define MEDLINK_BASE_IO_H_

#include <cstdint>
#include <cstring>
#include <functional>
#include <istream>
#include <ostream>
#include <string>
#include <type_traits>
#include <vector>

#include "json.hpp"

namespace medlink {

using json = nlohmann::json;

std::string ReadFile(const std::string &path);
void WriteFile(const std::string &path, const std::string &contents);

// Reads a text file line by line with trailing '\r' stripped.
std::vector<std::string> ReadLines(const std::string &path);

// JSON lines: one compact object per line.
void WriteJsonl(const std::string &path, const std::vector<json> &records);
std::vector<json> ReadJsonl(const std::string &path);
void ForEachJsonl(const std::string &path,
                  const std::function<void(const json &)> &fn);

// Little helpers for the binary container formats (index, vectorizers,
// checkpoints). Values are written in host byte order; every container
// carries a magic tag and format version that the reader checks.
class BinaryWriter {
 public:
  explicit BinaryWriter(std::ostream *out) : out_(out) {}

  template <typename T>
  void Put(T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    out_->write(reinterpret_cast<const char *>(&value), sizeof(T));
  }
  void PutString(const std::string &s) {
    Put<uint64_t>(s.size());
    out_->write(s.data(), static_cast<std::streamsize>(s.size()));
  }
  template <typename T>
  void PutArray(const T *data, size_t n) {
    static_assert(std::is_trivially_copyable_v<T>);
    Put<uint64_t>(n);
    out_->write(reinterpret_cast<const char *>(data),
                static_cast<std::streamsize>(n * sizeof(T)));
  }
  template <typename T>
  void PutVector(const std::vector<T> &v) {
    PutArray(v.data(), v.size());
  }

 private:
  std::ostream *out_;
};

class BinaryReader {
 public:
  explicit BinaryReader(std::istream *in) : in_(in) {}

  template <typename T>
  T Get() {
    static_assert(std::is_trivially_copyable_v<T>);
    T value;
    Read(reinterpret_cast<char *>(&value), sizeof(T));
    return value;
  }
  std::string GetString() {
    auto n = Get<uint64_t>();
    CheckSize(n);
    std::string s(n, '\0');
    Read(s.data(), n);
    return s;
  }
  template <typename T>
  std::vector<T> GetVector() {
    auto n = Get<uint64_t>();
    CheckSize(n * sizeof(T));
    std::vector<T> v(n);
    Read(reinterpret_cast<char *>(v.data()), n * sizeof(T));
    return v;
  }
  template <typename T>
  void GetArray(T *data, size_t expected) {
    auto n = Get<uint64_t>();
    if (n != expected) Fail("array size mismatch");
    Read(reinterpret_cast<char *>(data), n * sizeof(T));
  }

  // Reads a magic tag and version; throws on mismatch.
  uint32_t ExpectHeader(const char magic[4], uint32_t max_version);

 private:
  void Read(char *dst, size_t n);
  void CheckSize(uint64_t n);
  [[noreturn]] void Fail(const std::string &why);

  std::istream *in_;
};

void WriteHeader(BinaryWriter *w, const char magic[4], uint32_t version);

}  // namespace medlink

#endif  // MEDLINK_BASE_IO_H_
