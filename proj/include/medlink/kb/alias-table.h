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

#ifndef MEDLINK_KB_ALIAS_TABLE_H_
#define MEDLINK_KB_ALIAS_TABLE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "medlink/kb/name-cleaner.h"
#include "medlink/kb/type-hierarchy.h"

namespace medlink {

// Name authority, best first. The ordinal is the sort rank used by the
// candidate generator.
enum class NameType : uint8_t {
  kPrimaryName = 0,
  kPrimaryNameDisambiguated = 1,
  kAcronym = 2,
  kSynonym = 3,
};
constexpr int kNumNameTypes = 4;

std::string_view NameTypeName(NameType type);
std::optional<NameType> ParseNameType(std::string_view name);
inline bool IsPrimary(NameType t) {
  return t == NameType::kPrimaryName ||
         t == NameType::kPrimaryNameDisambiguated;
}

struct AliasEntry {
  std::string name;
  std::string entity_id;
  SemanticType type;
  NameType name_type = NameType::kSynonym;
  std::optional<std::string> qualifier;

  bool operator==(const AliasEntry &other) const = default;
};

// One row of the ontology TSV: entity_id, type_id, raw name, name-type tag.
// Tags: P (primary), PD (primary, disambiguated), A (acronym), S (synonym).
struct OntologyRecord {
  std::string entity_id;
  std::string type_id;
  std::string name;
  std::string tag;
  int line = 0;
};

std::vector<OntologyRecord> ReadOntologyTsv(const std::string &path);

struct AliasBuildReport {
  int64_t records = 0;
  int64_t kept = 0;
  int64_t malformed = 0;
  int64_t unmapped_type = 0;
  int64_t rejected_name = 0;
  int64_t duplicates = 0;
  int64_t missing_primary = 0;
  // Extra primaries demoted to synonyms (kept, not a discard).
  int64_t demoted_primaries = 0;
  int64_t by_name_type[kNumNameTypes] = {0, 0, 0, 0};
  // First few rejection reasons, for diagnostics.
  std::vector<std::string> reasons;

  int64_t discarded() const {
    return malformed + unmapped_type + rejected_name + duplicates +
           missing_primary;
  }
};

// The entity knowledge base as a flat list of alias entries. Immutable after
// construction; safe to share across threads.
class AliasTable {
 public:
  AliasTable() = default;

  // Cleans, types and deduplicates ontology records. Throws if nothing
  // survives.
  static AliasTable Build(const std::vector<OntologyRecord> &records,
                          const TypeHierarchy &hierarchy,
                          const NameCleaner &cleaner,
                          AliasBuildReport *report);

  // Wraps already-clean entries (e.g. read back from JSONL), checking the
  // one-primary-per-entity invariant.
  static AliasTable FromEntries(std::vector<AliasEntry> entries);

  const std::vector<AliasEntry> &entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  size_t num_entities() const { return primary_.size(); }

  bool HasEntity(std::string_view entity_id) const;

  // Primary (or disambiguated primary) entry of an entity, or null.
  const AliasEntry *Primary(std::string_view entity_id) const;

  // Canonical name for the span linker: "{type} , {primary} ({qualifier})".
  std::string LinkerText(std::string_view entity_id) const;

  // Same as LinkerText but with the matched alias in place of the primary.
  std::string SelectorText(const AliasEntry &alias) const;

  // Entity ids in order of first appearance.
  std::vector<std::string> EntityIds() const;

  void WriteJsonl(const std::string &path) const;
  static AliasTable ReadJsonl(const std::string &path);

  // FNV-1a over the serialized entries; binds sidecar files to a table.
  uint64_t Fingerprint() const;

 private:
  void IndexEntities();

  std::vector<AliasEntry> entries_;
  std::unordered_map<std::string, uint32_t> primary_;
  std::vector<std::string> entity_order_;
};

}  // namespace medlink

#endif  // MEDLINK_KB_ALIAS_TABLE_H_
