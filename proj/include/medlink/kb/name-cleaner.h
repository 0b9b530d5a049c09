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

#ifndef MEDLINK_KB_NAME_CLEANER_H_
#define MEDLINK_KB_NAME_CLEANER_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace medlink {

struct CleanedName {
  std::string name;
  std::optional<std::string> qualifier;

  // Non-empty when the name was rejected; the entry must then be discarded.
  std::string rejected;

  bool ok() const { return rejected.empty(); }
};

// Strips supplementary text from ontology names: configured meta-information
// phrases ("NOS", "Not Otherwise Specified", ...) and a trailing
// angle-bracket qualifier, which is kept separately for canonical names.
class NameCleaner {
 public:
  NameCleaner();
  explicit NameCleaner(std::vector<std::string> meta_tokens);

  static std::vector<std::string> DefaultMetaTokens();

  CleanedName Clean(std::string_view raw) const;

 private:
  std::string RemoveMetaTokens(std::string_view name) const;

  // Sorted longest first so that "Not Otherwise Specified" wins over a
  // shorter phrase it contains.
  std::vector<std::string> meta_tokens_;
};

}  // namespace medlink

#endif  // MEDLINK_KB_NAME_CLEANER_H_
