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

#ifndef MEDLINK_PREPROCESS_PUBTATOR_H_
#define MEDLINK_PREPROCESS_PUBTATOR_H_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "medlink/preprocess/document.h"

namespace medlink {

// Reads PubTator: "id|t|title", "id|a|abstract", then mention lines
// "id TAB start TAB end TAB text TAB type TAB concept", blank line between
// documents. A "UMLS:" prefix on concept ids is removed.
std::vector<RawDocument> ReadPubTator(std::istream &in);
std::vector<RawDocument> ReadPubTatorFile(const std::string &path);

void WritePubTator(std::ostream &out, const std::vector<RawDocument> &docs);
void WritePubTatorFile(const std::string &path,
                       const std::vector<RawDocument> &docs);

}  // namespace medlink

#endif  // MEDLINK_PREPROCESS_PUBTATOR_H_
