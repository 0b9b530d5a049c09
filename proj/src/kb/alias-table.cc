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

#include "medlink/kb/alias-table.h"

#include <set>
#include <tuple>

#include "medlink/base/error.h"
#include "medlink/base/io.h"
#include "medlink/base/text.h"

namespace medlink {

namespace {

constexpr size_t kMaxReasons = 20;

void AddReason(AliasBuildReport *report, std::string reason) {
  if (report->reasons.size() < kMaxReasons) {
    report->reasons.push_back(std::move(reason));
  }
}

std::optional<NameType> ParseTag(std::string_view tag) {
  if (tag == "P") return NameType::kPrimaryName;
  if (tag == "PD") return NameType::kPrimaryNameDisambiguated;
  if (tag == "A") return NameType::kAcronym;
  if (tag == "S") return NameType::kSynonym;
  return std::nullopt;
}

void Fnv(uint64_t *h, std::string_view s) {
  for (unsigned char c : s) {
    *h ^= c;
    *h *= 1099511628211ULL;
  }
  *h ^= 0xff;
  *h *= 1099511628211ULL;
}

}  // namespace

std::string_view NameTypeName(NameType type) {
  switch (type) {
    case NameType::kPrimaryName: return "primary";
    case NameType::kPrimaryNameDisambiguated: return "primary_disambiguated";
    case NameType::kAcronym: return "acronym";
    case NameType::kSynonym: return "synonym";
  }
  return "synonym";
}

std::optional<NameType> ParseNameType(std::string_view name) {
  for (int i = 0; i < kNumNameTypes; ++i) {
    auto t = static_cast<NameType>(i);
    if (NameTypeName(t) == name) return t;
  }
  return std::nullopt;
}

std::vector<OntologyRecord> ReadOntologyTsv(const std::string &path) {
  std::vector<OntologyRecord> records;
  int lineno = 0;
  for (const std::string &line : ReadLines(path)) {
    ++lineno;
    if (Trim(line).empty() || line[0] == '#') continue;
    auto fields = Split(line, '\t');
    OntologyRecord r;
    r.line = lineno;
    // Short rows keep empty fields and are counted as malformed by Build.
    if (fields.size() == 4) {
      r.entity_id = std::string(Trim(fields[0]));
      r.type_id = std::string(Trim(fields[1]));
      r.name = fields[2];
      r.tag = std::string(Trim(fields[3]));
    }
    records.push_back(std::move(r));
  }
  return records;
}

AliasTable AliasTable::Build(const std::vector<OntologyRecord> &records,
                             const TypeHierarchy &hierarchy,
                             const NameCleaner &cleaner,
                             AliasBuildReport *report) {
  AliasBuildReport local;
  if (report == nullptr) report = &local;
  *report = AliasBuildReport();
  report->records = static_cast<int64_t>(records.size());

  // Pass 1: validate, type and clean every record.
  std::vector<AliasEntry> accepted;
  for (const OntologyRecord &r : records) {
    auto tag = ParseTag(r.tag);
    if (r.entity_id.empty() || r.type_id.empty() || Trim(r.name).empty() ||
        !tag.has_value()) {
      ++report->malformed;
      AddReason(report, "line " + std::to_string(r.line) + ": malformed");
      continue;
    }
    auto type = hierarchy.MapToSelected(r.type_id);
    if (!type.has_value()) {
      ++report->unmapped_type;
      AddReason(report, "line " + std::to_string(r.line) + ": type " +
                            r.type_id + " has no selected ancestor");
      continue;
    }
    CleanedName cleaned = cleaner.Clean(r.name);
    if (!cleaned.ok()) {
      ++report->rejected_name;
      AddReason(report, "line " + std::to_string(r.line) + ": " +
                            cleaned.rejected);
      continue;
    }
    AliasEntry entry;
    entry.name = std::move(cleaned.name);
    entry.entity_id = r.entity_id;
    entry.type = *type;
    entry.name_type = *tag;
    entry.qualifier = std::move(cleaned.qualifier);
    if (entry.name_type == NameType::kPrimaryName && entry.qualifier) {
      entry.name_type = NameType::kPrimaryNameDisambiguated;
    }
    accepted.push_back(std::move(entry));
  }

  // Pass 2: one primary and one semantic type per entity.
  std::unordered_map<std::string, size_t> first_primary;
  std::unordered_map<std::string, SemanticType> entity_type;
  for (size_t i = 0; i < accepted.size(); ++i) {
    AliasEntry &e = accepted[i];
    entity_type.try_emplace(e.entity_id, e.type);
    if (IsPrimary(e.name_type)) {
      if (!first_primary.emplace(e.entity_id, i).second) {
        e.name_type = NameType::kSynonym;
        ++report->demoted_primaries;
      }
    }
  }

  // Pass 3: drop entities without a primary, deduplicate.
  std::set<std::tuple<std::string, std::string, NameType>> seen;
  std::vector<AliasEntry> kept;
  kept.reserve(accepted.size());
  for (AliasEntry &e : accepted) {
    if (first_primary.find(e.entity_id) == first_primary.end()) {
      ++report->missing_primary;
      AddReason(report, "entity " + e.entity_id + " has no primary name");
      continue;
    }
    if (!seen.emplace(e.name, e.entity_id, e.name_type).second) {
      ++report->duplicates;
      continue;
    }
    e.type = entity_type.at(e.entity_id);
    ++report->by_name_type[static_cast<int>(e.name_type)];
    kept.push_back(std::move(e));
  }
  report->kept = static_cast<int64_t>(kept.size());
  if (kept.empty()) {
    throw Error("alias table is empty: no ontology record survived cleaning");
  }
  return FromEntries(std::move(kept));
}

AliasTable AliasTable::FromEntries(std::vector<AliasEntry> entries) {
  AliasTable table;
  table.entries_ = std::move(entries);
  table.IndexEntities();
  return table;
}

void AliasTable::IndexEntities() {
  primary_.clear();
  entity_order_.clear();
  std::unordered_map<std::string, bool> known;
  for (size_t i = 0; i < entries_.size(); ++i) {
    const AliasEntry &e = entries_[i];
    if (known.emplace(e.entity_id, true).second) {
      entity_order_.push_back(e.entity_id);
    }
    if (IsPrimary(e.name_type)) {
      if (!primary_.emplace(e.entity_id, static_cast<uint32_t>(i)).second) {
        throw Error("entity " + e.entity_id + " has two primary names");
      }
    }
  }
  for (const std::string &id : entity_order_) {
    if (primary_.find(id) == primary_.end()) {
      throw Error("entity " + id + " has no primary name");
    }
  }
}

bool AliasTable::HasEntity(std::string_view entity_id) const {
  return primary_.find(std::string(entity_id)) != primary_.end();
}

const AliasEntry *AliasTable::Primary(std::string_view entity_id) const {
  auto it = primary_.find(std::string(entity_id));
  if (it == primary_.end()) return nullptr;
  return &entries_[it->second];
}

std::string AliasTable::LinkerText(std::string_view entity_id) const {
  const AliasEntry *primary = Primary(entity_id);
  if (primary == nullptr) {
    throw Error("unknown entity " + std::string(entity_id));
  }
  return SelectorText(*primary);
}

std::string AliasTable::SelectorText(const AliasEntry &alias) const {
  const AliasEntry *primary = Primary(alias.entity_id);
  std::string text = alias.type.name + " , " + alias.name;
  const auto &qualifier =
      primary != nullptr ? primary->qualifier : alias.qualifier;
  if (qualifier) text += " (" + *qualifier + ")";
  return text;
}

std::vector<std::string> AliasTable::EntityIds() const {
  return entity_order_;
}

void AliasTable::WriteJsonl(const std::string &path) const {
  std::vector<json> records;
  records.reserve(entries_.size());
  for (const AliasEntry &e : entries_) {
    json r = {{"name", e.name},
              {"entity_id", e.entity_id},
              {"type_id", e.type.id},
              {"type_name", e.type.name},
              {"name_type", NameTypeName(e.name_type)}};
    if (e.qualifier) r["qualifier"] = *e.qualifier;
    records.push_back(std::move(r));
  }
  medlink::WriteJsonl(path, records);
}

AliasTable AliasTable::ReadJsonl(const std::string &path) {
  std::vector<AliasEntry> entries;
  ForEachJsonl(path, [&](const json &r) {
    AliasEntry e;
    e.name = r.at("name").get<std::string>();
    e.entity_id = r.at("entity_id").get<std::string>();
    e.type.id = r.at("type_id").get<std::string>();
    e.type.name = r.at("type_name").get<std::string>();
    auto type = ParseNameType(r.at("name_type").get<std::string>());
    if (!type) throw Error(path + ": bad name_type");
    e.name_type = *type;
    if (r.contains("qualifier")) e.qualifier = r["qualifier"].get<std::string>();
    entries.push_back(std::move(e));
  });
  if (entries.empty()) throw Error(path + ": empty alias table");
  return FromEntries(std::move(entries));
}

uint64_t AliasTable::Fingerprint() const {
  uint64_t h = 14695981039346656037ULL;
  for (const AliasEntry &e : entries_) {
    Fnv(&h, e.name);
    Fnv(&h, e.entity_id);
    Fnv(&h, e.type.id);
    Fnv(&h, e.type.name);
    Fnv(&h, NameTypeName(e.name_type));
    Fnv(&h, e.qualifier.value_or(""));
  }
  return h;
}

}  // namespace medlink
