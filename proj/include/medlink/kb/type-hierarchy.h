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

#ifndef MEDLINK_KB_TYPE_HIERARCHY_H_
#define MEDLINK_KB_TYPE_HIERARCHY_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace medlink {

struct SemanticType {
  std::string id;
  std::string name;

  bool operator==(const SemanticType &other) const = default;
};

// Semantic type tree (child -> parent) plus the set of selected target types.
// Ontology types are mapped to the nearest selected ancestor.
class TypeHierarchy {
 public:
  // Adds a child -> parent edge. A type has at most one parent.
  void AddEdge(const std::string &child, const std::string &parent);

  // Marks a type as a selected target type with a display name.
  void Select(const std::string &id, const std::string &name);

  // Throws if the parent map contains a cycle.
  void Validate() const;

  bool IsNode(std::string_view id) const;
  bool IsSelected(std::string_view id) const;

  // Nearest ancestor (including the type itself) in the selected set.
  std::optional<SemanticType> MapToSelected(std::string_view type_id) const;

  const std::map<std::string, std::string, std::less<>> &selected() const {
    return selected_;
  }
  const std::map<std::string, std::string, std::less<>> &parents() const {
    return parents_;
  }

  // Loads "child TAB parent" edges and a selected-type list with lines
  // "type_id TAB display name". '#' starts a comment line.
  static TypeHierarchy Load(const std::string &hierarchy_path,
                            const std::string &types_path);

 private:
  std::map<std::string, std::string, std::less<>> parents_;
  std::map<std::string, std::string, std::less<>> selected_;
  std::set<std::string, std::less<>> nodes_;
};

}  // namespace medlink

#endif  // MEDLINK_KB_TYPE_HIERARCHY_H_
