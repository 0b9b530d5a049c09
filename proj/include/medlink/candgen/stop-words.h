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

#ifndef MEDLINK_CANDGEN_STOP_WORDS_H_
#define MEDLINK_CANDGEN_STOP_WORDS_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace medlink {

// Case-insensitive set of function words that may not begin or end a
// candidate span.
class StopList {
 public:
  StopList() = default;
  explicit StopList(const std::vector<std::string> &words);

  // The embedded English function-word list.
  static StopList Default();
  static StopList Load(const std::string &path);

  bool Contains(std::string_view token) const;
  size_t size() const { return words_.size(); }

 private:
  std::set<std::string, std::less<>> words_;
};

}  // namespace medlink

#endif  // MEDLINK_CANDGEN_STOP_WORDS_H_
