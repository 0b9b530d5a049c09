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

#include "medlink/pipeline/synthetic.h"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <map>
#include <random>
#include <sstream>

#include "medlink/base/error.h"
#include "medlink/base/io.h"
#include "medlink/candgen/stop-words.h"
#include "medlink/preprocess/pubtator.h"

namespace medlink {

namespace {

constexpr char kConsonants[] = "bdfgklmnprstvz";
constexpr char kVowels[] = "aeiou";

struct TypeInfo {
  const char *id;
  const char *name;
  const char *parent;
  bool selected;
  std::vector<std::string> cues;
};

const std::vector<TypeInfo> &Types() {
  static const std::vector<TypeInfo> kTypes = {
      {"T005", "Virus", "T000", true,
       {"infection", "viral", "replication", "virions"}},
      {"T007", "Bacterium", "T000", true,
       {"culture", "colonies", "isolates", "growth"}},
      {"T116", "Protein", "T000", true,
       {"expression", "binding", "phosphorylation", "receptor"}},
      {"T126", "Enzyme", "T116", false,
       {"expression", "catalysis", "phosphorylation", "inhibition"}},
      {"T047", "Disease", "T000", true,
       {"patients", "symptoms", "diagnosis", "prognosis"}},
  };
  return kTypes;
}

const TypeInfo &TypeById(const std::string &id) {
  for (const TypeInfo &t : Types()) {
    if (id == t.id) return t;
  }
  throw Error("synthetic: unknown type " + id);
}

std::string SelectedType(const std::string &id) {
  const TypeInfo &t = TypeById(id);
  return t.selected ? t.id : t.parent;
}

class NameFactory {
 public:
  NameFactory(std::mt19937_64 *rng, const std::vector<SyntheticConcept> &seen)
      : rng_(rng), stop_(StopList::Default()) {
    for (const SyntheticConcept &c : seen) {
      names_.insert(c.name);
      if (!c.synonym.empty()) names_.insert(c.synonym);
      acronyms_.insert(c.acronym);
    }
  }

  int Uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(*rng_);
  }
  bool Chance(double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(*rng_) < p;
  }

  std::string Syllable() {
    std::string s;
    s += kConsonants[Uniform(0, sizeof(kConsonants) - 2)];
    s += kVowels[Uniform(0, sizeof(kVowels) - 2)];
    return s;
  }

  std::string Word() {
    while (true) {
      std::string w;
      int n = Uniform(2, 3);
      for (int i = 0; i < n; ++i) w += Syllable();
      if (!stop_.Contains(w)) return w;
    }
  }

  static std::string Acronym(const std::vector<std::string> &words) {
    std::string a;
    for (const std::string &w : words) a += w[0];
    if (a.size() < 3) a += words[0][2];
    if (a.size() < 3 && words[0].size() > 4) a += words[0][4];
    for (char &c : a) c = static_cast<char>(std::toupper(c));
    return a;
  }

  // Fills name, acronym and synonym with fresh strings.
  void Make(SyntheticConcept *c, double synonym_fraction) {
    while (true) {
      double r = std::uniform_real_distribution<double>(0.0, 1.0)(*rng_);
      int n = r < 0.15 ? 1 : (r < 0.85 ? 2 : 3);
      std::vector<std::string> words;
      for (int i = 0; i < n; ++i) words.push_back(Word());
      std::string name = Join(words, " ");
      std::string acronym = Acronym(words);
      std::string synonym;
      if (Chance(synonym_fraction)) {
        if (n == 1) {
          synonym = name + Syllable();
        } else {
          std::vector<std::string> rev(words.rbegin(), words.rend());
          synonym = Join(rev, " ");
        }
      }
      if (names_.count(name) || acronyms_.count(acronym) ||
          (!synonym.empty() && (names_.count(synonym) || synonym == name)) ||
          stop_.Contains(acronym)) {
        continue;
      }
      names_.insert(name);
      if (!synonym.empty()) names_.insert(synonym);
      acronyms_.insert(acronym);
      c->name = name;
      c->acronym = acronym;
      c->synonym = synonym;
      return;
    }
  }

 private:
  static std::string Join(const std::vector<std::string> &words,
                          const char *sep) {
    std::string out;
    for (size_t i = 0; i < words.size(); ++i) {
      if (i) out += sep;
      out += words[i];
    }
    return out;
  }

  std::mt19937_64 *rng_;
  StopList stop_;
  std::set<std::string> names_;
  std::set<std::string> acronyms_;
};

std::string ConceptId(size_t index) {
  std::ostringstream s;
  s << 'C';
  s.width(7);
  s.fill('0');
  s << index + 1;
  return s.str();
}

void AppendConcepts(SyntheticData *data, int count, double synonym_fraction,
                    double shared_fraction, std::mt19937_64 *rng) {
  NameFactory names(rng, data->concepts);
  const auto &types = Types();
  for (int i = 0; i < count; ++i) {
    SyntheticConcept c;
    c.id = ConceptId(data->concepts.size());
    c.type_id = types[names.Uniform(0, static_cast<int>(types.size()) - 1)].id;
    names.Make(&c, synonym_fraction);
    if (names.Chance(shared_fraction)) {
      // Reuse the acronym of a concept with a different selected type.
      std::vector<const SyntheticConcept *> others;
      for (const SyntheticConcept &o : data->concepts) {
        if (SelectedType(o.type_id) != SelectedType(c.type_id)) {
          others.push_back(&o);
        }
      }
      if (!others.empty()) {
        c.acronym =
            others[names.Uniform(0, static_cast<int>(others.size()) - 1)]
                ->acronym;
      }
    }
    data->concepts.push_back(std::move(c));
  }
}

// Accumulates text and mention offsets for one document.
class TextBuilder {
 public:
  explicit TextBuilder(int base) : base_(base) {}

  void Add(const std::string &s) { text_ += s; }
  void AddMention(const std::string &s, const SyntheticConcept &c) {
    RawMention m;
    m.begin = base_ + static_cast<int>(text_.size());
    m.end = m.begin + static_cast<int>(s.size());
    m.text = s;
    m.type_id = SelectedType(c.type_id);
    m.entity_id = c.id;
    mentions_.push_back(std::move(m));
    text_ += s;
  }

  const std::string &text() const { return text_; }
  std::vector<RawMention> &mentions() { return mentions_; }

 private:
  int base_;
  std::string text_;
  std::vector<RawMention> mentions_;
};

class DocumentWriter {
 public:
  DocumentWriter(const SyntheticOptions &options,
                 const std::vector<SyntheticConcept> &concepts,
                 std::mt19937_64 *rng)
      : options_(options), concepts_(concepts), rng_(rng) {}

  RawDocument Make(int index) {
    RawDocument doc;
    doc.id = std::to_string(10000001 + index);
    int focus = Uniform(2, 5);
    std::vector<int> chosen;
    for (int i = 0; i < focus; ++i) {
      chosen.push_back(Uniform(0, static_cast<int>(concepts_.size()) - 1));
    }
    defined_ = -1;
    if (Chance(options_.definition_fraction)) defined_ = chosen[0];

    TextBuilder title(0);
    Clause(&title, Pick(chosen, true), true);
    if (Chance(0.5)) {
      title.Add(" in ");
      Clause(&title, Pick(chosen, true), false);
    }
    title.Add(".");

    int base = static_cast<int>(title.text().size()) + 1;
    TextBuilder abstract(base);
    int n = Uniform(options_.min_sentences, options_.max_sentences);
    bool defined_emitted = false;
    for (int s = 0; s < n; ++s) {
      if (s) abstract.Add(" ");
      abstract.Add(kOpeners[Uniform(0, kNumOpeners - 1)]);
      abstract.Add(" ");
      int first = Pick(chosen, false);
      if (defined_ >= 0 && !defined_emitted) {
        first = defined_;
        Clause(&abstract, first, false, /*define=*/true);
        defined_emitted = true;
      } else {
        Clause(&abstract, first, false);
      }
      if (Chance(options_.two_mention_sentence_fraction)) {
        abstract.Add(" and ");
        Clause(&abstract, Pick(chosen, false), false);
      }
      abstract.Add(".");
    }
    doc.title = title.text();
    doc.abstract = abstract.text();
    doc.mentions = std::move(title.mentions());
    for (RawMention &m : abstract.mentions()) doc.mentions.push_back(m);
    return doc;
  }

 private:
  static constexpr int kNumOpeners = 6;
  static constexpr const char *kOpeners[kNumOpeners] = {
      "We observed",          "Results showed",    "Analysis revealed",
      "These data implicate", "Our cohort linked", "Experiments confirmed"};

  int Uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(*rng_);
  }
  bool Chance(double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(*rng_) < p;
  }

  // Title mentions avoid the defined concept so its definition comes first.
  int Pick(const std::vector<int> &chosen, bool title) {
    while (true) {
      int c = chosen[Uniform(0, static_cast<int>(chosen.size()) - 1)];
      if (!title || c != defined_ || chosen.size() == 1) return c;
      if (std::all_of(chosen.begin(), chosen.end(),
                      [&](int x) { return x == defined_; })) {
        return c;
      }
    }
  }

  std::string Surface(int index) {
    const SyntheticConcept &c = concepts_[index];
    bool conflict = defined_ >= 0 && index != defined_ &&
                    c.acronym == concepts_[defined_].acronym;
    if (index == defined_) {
      return Chance(0.7) ? c.acronym : c.name;
    }
    double r = std::uniform_real_distribution<double>(0.0, 1.0)(*rng_);
    if (!conflict && r < options_.acronym_mention_fraction) return c.acronym;
    r -= options_.acronym_mention_fraction;
    if (!c.synonym.empty() && r >= 0 && r < options_.synonym_mention_fraction) {
      return c.synonym;
    }
    return c.name;
  }

  void Clause(TextBuilder *out, int index, bool capitalize,
              bool define = false) {
    const SyntheticConcept &c = concepts_[index];
    const std::vector<std::string> &cues = TypeById(c.type_id).cues;
    const std::string &cue = cues[Uniform(0, static_cast<int>(cues.size()) - 1)];
    auto mention = [&]() {
      if (define) {
        out->AddMention(c.name, c);
        out->Add(" (");
        out->AddMention(c.acronym, c);
        out->Add(")");
      } else {
        std::string s = Surface(index);
        if (capitalize) s[0] = static_cast<char>(std::toupper(s[0]));
        out->AddMention(s, c);
      }
    };
    switch (Uniform(0, 2)) {
      case 0:
        mention();
        out->Add(" " + cue);
        break;
      case 1: {
        std::string lead = cue;
        if (capitalize) lead[0] = static_cast<char>(std::toupper(lead[0]));
        out->Add(lead + " of ");
        capitalize = false;
        mention();
        break;
      }
      default:
        out->Add(capitalize ? "The " : "the ");
        capitalize = false;
        mention();
        out->Add(" " + cue);
        break;
    }
  }

  const SyntheticOptions &options_;
  const std::vector<SyntheticConcept> &concepts_;
  std::mt19937_64 *rng_;
  int defined_ = -1;
};

}  // namespace

std::vector<OntologyRecord> SyntheticData::OntologyRecords() const {
  std::vector<OntologyRecord> out;
  auto add = [&](const SyntheticConcept &c, const std::string &name,
                 const char *tag) {
    OntologyRecord r;
    r.entity_id = c.id;
    r.type_id = c.type_id;
    r.name = name;
    r.tag = tag;
    r.line = static_cast<int>(out.size()) + 1;
    out.push_back(std::move(r));
  };
  for (const SyntheticConcept &c : concepts) {
    add(c, c.name, "P");
    add(c, c.acronym, "A");
    if (!c.synonym.empty()) add(c, c.synonym, "S");
  }
  return out;
}

void SyntheticData::Write(const std::string &dir) const {
  std::filesystem::create_directories(dir);
  auto path = [&](const char *name) {
    return (std::filesystem::path(dir) / name).string();
  };
  std::ostringstream ontology;
  for (const OntologyRecord &r : OntologyRecords()) {
    ontology << r.entity_id << '\t' << r.type_id << '\t' << r.name << '\t'
             << r.tag << '\n';
  }
  WriteFile(path("ontology.tsv"), ontology.str());
  std::ostringstream edges;
  for (const auto &[child, parent] : hierarchy) {
    edges << child << '\t' << parent << '\n';
  }
  WriteFile(path("hierarchy.tsv"), edges.str());
  std::ostringstream selected;
  for (const auto &[id, name] : types) selected << id << '\t' << name << '\n';
  WriteFile(path("types.tsv"), selected.str());
  WritePubTatorFile(path("corpus.pubtator"), documents);
}

SyntheticData GenerateSynthetic(const SyntheticOptions &options) {
  if (options.concepts < 1 || options.documents < 0 ||
      options.min_sentences < 1 ||
      options.max_sentences < options.min_sentences) {
    throw Error("synthetic: bad options");
  }
  SyntheticData data;
  for (const TypeInfo &t : Types()) {
    data.hierarchy.emplace_back(t.id, t.parent);
    if (t.selected) data.types.emplace_back(t.id, t.name);
  }
  std::mt19937_64 rng(options.seed);
  AppendConcepts(&data, options.concepts, options.synonym_fraction,
                 options.shared_acronym_fraction, &rng);
  DocumentWriter writer(options, data.concepts, &rng);
  for (int i = 0; i < options.documents; ++i) {
    data.documents.push_back(writer.Make(i));
  }
  return data;
}

void AddSyntheticConcepts(SyntheticData *data, int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  AppendConcepts(data, count, 0.5, 0.0, &rng);
}

}  // namespace medlink
