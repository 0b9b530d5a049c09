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

#ifndef MEDLINK_PREPROCESS_IOB2_H_
#define MEDLINK_PREPROCESS_IOB2_H_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "medlink/preprocess/document.h"

namespace medlink {

// One "token TAB tag" line per token, tags O, B-<type>|<entity> and
// I-<type>|<entity>, a blank line after each sentence. Documents start with
// a "-DOCSTART-<TAB><doc id>" line followed by a blank line.
// Throws if mentions overlap.
void WriteIob2(std::ostream &out, const Document &doc);

struct Iob2Document {
  std::string id;
  std::vector<std::vector<std::string>> sentences;
  std::vector<Mention> mentions;
};

std::vector<Iob2Document> ReadIob2(std::istream &in);

}  // namespace medlink

#endif  // MEDLINK_PREPROCESS_IOB2_H_
