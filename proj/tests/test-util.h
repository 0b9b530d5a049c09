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

#ifndef MEDLINK_TESTS_TEST_UTIL_H_
#define MEDLINK_TESTS_TEST_UTIL_H_

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "medlink/kb/alias-table.h"
#include "medlink/preprocess/document.h"
#include "medlink/preprocess/tokenizer.h"

namespace medlink {
namespace testing {

inline Document MakeDocument(const std::string &id, const std::string &text) {
  return SegmentAndTokenize(id, text, TokenizerOptions());
}

inline Mention MakeMention(int sentence, int start, int end,
                           const std::string &entity,
                           const std::string &type = "T1") {
  Mention m;
  m.sentence = sentence;
  m.start = start;
  m.end = end;
  m.entity_id = entity;
  m.type_id = type;
  return m;
}

inline AliasEntry Alias(const std::string &name, const std::string &entity,
                        NameType name_type = NameType::kPrimaryName,
                        const std::string &type_id = "T047",
                        const std::string &type_name = "Disease") {
  AliasEntry e;
  e.name = name;
  e.entity_id = entity;
  e.type = {type_id, type_name};
  e.name_type = name_type;
  return e;
}

// Fresh, empty scratch directory under the system temp directory.
inline std::string ScratchDir(const std::string &name) {
  auto dir = std::filesystem::temp_directory_path() / ("medlink-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace testing
}  // namespace medlink

#endif  // MEDLINK_TESTS_TEST_UTIL_H_
