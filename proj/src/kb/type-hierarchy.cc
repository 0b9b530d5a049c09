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

#include "medlink/kb/type-hierarchy.h"

#include "medlink/base/error.h"
#include "medlink/base/io.h"
#include "medlink/base/text.h"

namespace medlink {

void TypeHierarchy::AddEdge(const std::string &child,
                            const std::string &parent) {
  if (child == parent) throw Error("type " + child + " is its own parent");
  auto [it, inserted] = parents_.emplace(child, parent);
  if (!inserted && it->second != parent) {
    throw Error("type " + child + " has two parents: " + it->second + ", " +
                parent);
  }
  nodes_.insert(child);
  nodes_.insert(parent);
}

void TypeHierarchy::Select(const std::string &id, const std::string &name) {
  selected_[id] = name;
  nodes_.insert(id);
}

void TypeHierarchy::Validate() const {
  // Each walk visits at most |parents| + 1 nodes unless there is a cycle.
  for (const auto &[child, parent] : parents_) {
    std::string_view current = child;
    size_t steps = 0;
    while (true) {
      auto it = parents_.find(current);
      if (it == parents_.end()) break;
      current = it->second;
      if (++steps > parents_.size()) {
        throw Error("type hierarchy has a cycle through " + child);
      }
    }
  }
}

bool TypeHierarchy::IsNode(std::string_view id) const {
  return nodes_.find(id) != nodes_.end();
}

bool TypeHierarchy::IsSelected(std::string_view id) const {
  return selected_.find(id) != selected_.end();
}

std::optional<SemanticType> TypeHierarchy::MapToSelected(
    std::string_view type_id) const {
  if (!IsNode(type_id)) return std::nullopt;
  std::string_view current = type_id;
  for (size_t steps = 0; steps <= parents_.size(); ++steps) {
    auto sel = selected_.find(current);
    if (sel != selected_.end()) return SemanticType{sel->first, sel->second};
    auto it = parents_.find(current);
    if (it == parents_.end()) return std::nullopt;
    current = it->second;
  }
  return std::nullopt;
}

TypeHierarchy TypeHierarchy::Load(const std::string &hierarchy_path,
                                  const std::string &types_path) {
  TypeHierarchy h;
  for (const std::string &line : ReadLines(hierarchy_path)) {
    std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    auto fields = Split(trimmed, '\t');
    if (fields.size() != 2) {
      throw Error(hierarchy_path + ": expected 'child TAB parent': " + line);
    }
    h.AddEdge(std::string(Trim(fields[0])), std::string(Trim(fields[1])));
  }
  for (const std::string &line : ReadLines(types_path)) {
    std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    auto fields = Split(trimmed, '\t');
    std::string id(Trim(fields[0]));
    std::string name = fields.size() > 1 ? std::string(Trim(fields[1])) : id;
    h.Select(id, name);
  }
  if (h.selected_.empty()) throw Error(types_path + ": no selected types");
  h.Validate();
  return h;
}

}  // namespace medlink
