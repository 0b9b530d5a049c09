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

#include "medlink/base/io.h"

#include <fstream>
#include <sstream>

#include "medlink/base/error.h"

namespace medlink {

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string &path, const std::string &contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("write failed: " + path);
}

std::vector<std::string> ReadLines(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

void WriteJsonl(const std::string &path, const std::vector<json> &records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  for (const json &r : records) out << r.dump() << '\n';
  if (!out) throw Error("write failed: " + path);
}

void ForEachJsonl(const std::string &path,
                  const std::function<void(const json &)> &fn) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::exception &e) {
      throw Error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    fn(record);
  }
}

std::vector<json> ReadJsonl(const std::string &path) {
  std::vector<json> records;
  ForEachJsonl(path, [&](const json &r) { records.push_back(r); });
  return records;
}

void WriteHeader(BinaryWriter *w, const char magic[4], uint32_t version) {
  for (int i = 0; i < 4; ++i) w->Put<char>(magic[i]);
  w->Put<uint32_t>(version);
}

uint32_t BinaryReader::ExpectHeader(const char magic[4], uint32_t max_version) {
  for (int i = 0; i < 4; ++i) {
    if (Get<char>() != magic[i]) Fail("bad magic");
  }
  auto version = Get<uint32_t>();
  if (version == 0 || version > max_version) {
    Fail("unsupported format version " + std::to_string(version));
  }
  return version;
}

void BinaryReader::Read(char *dst, size_t n) {
  in_->read(dst, static_cast<std::streamsize>(n));
  if (static_cast<size_t>(in_->gcount()) != n) Fail("truncated input");
}

void BinaryReader::CheckSize(uint64_t n) {
  // Guards against allocating absurd buffers from a corrupt length field.
  if (n > (uint64_t{1} << 36)) Fail("corrupt length field");
}

void BinaryReader::Fail(const std::string &why) {
  throw Error("binary container: " + why);
}

}  // namespace medlink
