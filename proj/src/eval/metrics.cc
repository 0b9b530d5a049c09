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

#include "medlink/eval/metrics.h"

#include <algorithm>
#include <unordered_map>

namespace medlink {

namespace {

struct GoldMention {
  int sentence, start, end;
  const Mention *mention;
};

std::unordered_map<std::string, std::vector<const Mention *>> GoldByDoc(
    const std::vector<Document> &gold) {
  std::unordered_map<std::string, std::vector<const Mention *>> by_doc;
  for (const Document &d : gold) {
    auto &list = by_doc[d.id];
    for (const Mention &m : d.mentions) list.push_back(&m);
  }
  return by_doc;
}

bool SameSpan(const Mention &g, const Prediction &p) {
  return g.sentence == p.sentence && g.start == p.start && g.end == p.end;
}

}  // namespace

std::set<MentionKey> GoldEntityKeys(const std::vector<Document> &gold) {
  std::set<MentionKey> keys;
  for (const Document &d : gold) {
    for (const Mention &m : d.mentions) {
      keys.emplace(d.id, m.sentence, m.start, m.end, m.entity_id);
    }
  }
  return keys;
}

std::set<MentionKey> PredictionEntityKeys(const std::vector<Prediction> &preds) {
  std::set<MentionKey> keys;
  for (const Prediction &p : preds) {
    keys.emplace(p.doc_id, p.sentence, p.start, p.end, p.entity_id);
  }
  return keys;
}

PrfReport CompareKeySets(const std::set<MentionKey> &gold,
                         const std::set<MentionKey> &pred) {
  int64_t tp = 0;
  for (const MentionKey &k : pred) tp += gold.count(k);
  return PrfReport::FromCounts(tp, static_cast<int64_t>(pred.size()) - tp,
                               static_cast<int64_t>(gold.size()) - tp);
}

PrfReport MentionLevelPrf(const std::vector<Document> &gold,
                          const std::vector<Prediction> &preds) {
  std::set<MentionKey> pred_keys = PredictionEntityKeys(preds);
  PrfReport r = CompareKeySets(GoldEntityKeys(gold), pred_keys);
  r.duplicates = static_cast<int64_t>(preds.size() - pred_keys.size());
  return r;
}

PrfReport DocumentLevelPrf(const EntitySets &gold, const EntitySets &pred) {
  int64_t tp = 0, fp = 0, fn = 0;
  static const std::set<std::string> kEmpty;
  std::set<std::string> doc_ids;
  for (const auto &[doc, s] : gold) doc_ids.insert(doc);
  for (const auto &[doc, s] : pred) doc_ids.insert(doc);
  for (const std::string &doc : doc_ids) {
    auto g = gold.find(doc);
    auto p = pred.find(doc);
    const auto &gs = g == gold.end() ? kEmpty : g->second;
    const auto &ps = p == pred.end() ? kEmpty : p->second;
    int64_t common = 0;
    for (const std::string &e : ps) common += gs.count(e);
    tp += common;
    fp += static_cast<int64_t>(ps.size()) - common;
    fn += static_cast<int64_t>(gs.size()) - common;
  }
  return PrfReport::FromCounts(tp, fp, fn);
}

EntitySets GoldEntitySets(const std::vector<Document> &gold) {
  EntitySets sets;
  for (const Document &d : gold) {
    auto &s = sets[d.id];
    s.insert(d.raw_entities.begin(), d.raw_entities.end());
    for (const Mention &m : d.mentions) s.insert(m.entity_id);
  }
  return sets;
}

EntitySets PredictedEntitySets(const std::vector<Prediction> &preds) {
  EntitySets sets;
  for (const Prediction &p : preds) sets[p.doc_id].insert(p.entity_id);
  return sets;
}

PrfReport DocumentLevelPrf(const std::vector<Document> &gold,
                           const std::vector<Prediction> &preds) {
  return DocumentLevelPrf(GoldEntitySets(gold), PredictedEntitySets(preds));
}

PrfReport NerPrf(const std::vector<Document> &gold,
                 const std::vector<Prediction> &preds) {
  std::set<MentionKey> g, p;
  for (const Document &d : gold) {
    for (const Mention &m : d.mentions) {
      g.emplace(d.id, m.sentence, m.start, m.end, m.type_id);
    }
  }
  for (const Prediction &x : preds) {
    p.emplace(x.doc_id, x.sentence, x.start, x.end, x.type_id);
  }
  return CompareKeySets(g, p);
}

std::vector<std::pair<int, double>> RecallAtK(
    const std::vector<SpanCandidates> &lists,
    const std::vector<std::string> &gold_entities, const std::vector<int> &ks) {
  std::vector<int> ranks;
  for (size_t i = 0; i < lists.size(); ++i) {
    int rank = -1;
    const auto &matches = lists[i].matches;
    for (size_t r = 0; r < matches.size(); ++r) {
      if (matches[r].entity_id == gold_entities.at(i)) {
        rank = static_cast<int>(r);
        break;
      }
    }
    ranks.push_back(rank);
  }
  std::vector<std::pair<int, double>> out;
  for (int k : ks) {
    int64_t hits = std::count_if(ranks.begin(), ranks.end(),
                                 [&](int r) { return r >= 0 && r < k; });
    out.emplace_back(k, ranks.empty() ? 0.0
                                      : static_cast<double>(hits) /
                                            static_cast<double>(ranks.size()));
  }
  return out;
}

std::optional<double> StageRecall(const std::set<MentionKey> &gold,
                                  const std::set<MentionKey> &input,
                                  const std::set<MentionKey> &output) {
  int64_t present = 0, recovered = 0;
  for (const MentionKey &k : gold) {
    if (!input.count(k)) continue;
    ++present;
    recovered += output.count(k);
  }
  if (present == 0) return std::nullopt;
  return static_cast<double>(recovered) / static_cast<double>(present);
}

std::set<MentionKey> CandidateKeys(const std::vector<SpanCandidates> &spans) {
  std::set<MentionKey> keys;
  for (const SpanCandidates &sc : spans) {
    for (const LexicalMatch &m : sc.matches) {
      keys.emplace(sc.span.doc_id, sc.span.sentence, sc.span.start,
                   sc.span.end, m.entity_id);
    }
  }
  return keys;
}

SubsetReport SeenSubsetPrf(const std::vector<Document> &gold,
                           const std::vector<Prediction> &preds,
                           const std::set<std::string> &seen_entities,
                           bool seen) {
  auto keep = [&](const std::string &e) {
    return (seen_entities.count(e) > 0) == seen;
  };
  std::vector<Document> g = gold;
  for (Document &d : g) {
    d.mentions.erase(std::remove_if(d.mentions.begin(), d.mentions.end(),
                                    [&](const Mention &m) {
                                      return !keep(m.entity_id);
                                    }),
                     d.mentions.end());
    d.raw_entities.erase(std::remove_if(d.raw_entities.begin(),
                                        d.raw_entities.end(),
                                        [&](const std::string &e) {
                                          return !keep(e);
                                        }),
                         d.raw_entities.end());
  }
  std::vector<Prediction> p;
  for (const Prediction &x : preds) {
    if (keep(x.entity_id)) p.push_back(x);
  }
  return {MentionLevelPrf(g, p), DocumentLevelPrf(g, p)};
}

std::set<std::string> SeenEntities(const std::vector<Document> &train_gold) {
  std::set<std::string> seen;
  for (const Document &d : train_gold) {
    for (const Mention &m : d.mentions) seen.insert(m.entity_id);
  }
  return seen;
}

PrfReport AcronymPrf(const std::vector<Document> &gold,
                     const std::vector<Prediction> &preds) {
  std::vector<Prediction> acronym;
  std::set<std::tuple<std::string, int, int, int>> spans;
  for (const Prediction &p : preds) {
    if (p.name_type == NameType::kAcronym) {
      acronym.push_back(p);
      spans.emplace(p.doc_id, p.sentence, p.start, p.end);
    }
  }
  std::set<MentionKey> g;
  for (const Document &d : gold) {
    for (const Mention &m : d.mentions) {
      if (spans.count({d.id, m.sentence, m.start, m.end})) {
        g.emplace(d.id, m.sentence, m.start, m.end, m.entity_id);
      }
    }
  }
  return CompareKeySets(g, PredictionEntityKeys(acronym));
}

double ErrorBreakdown::Fraction(int64_t count) const {
  return false_positives == 0 ? 0.0
                              : static_cast<double>(count) /
                                    static_cast<double>(false_positives);
}

json ErrorBreakdown::ToJson() const {
  auto item = [&](int64_t n) {
    return json{{"count", n}, {"fraction", Fraction(n)}};
  };
  return json{{"false_positives", false_positives},
              {"correct_span_bad_entity", item(correct_span_bad_entity)},
              {"correct_span_and_type", item(correct_span_and_type)},
              {"correct_entity_overlapping_true_span",
               item(correct_entity_overlapping)},
              {"correct_entity_containing_true_span",
               item(correct_entity_contained)}};
}

ErrorBreakdown BreakdownFalsePositives(const std::vector<Document> &gold,
                                       const std::vector<Prediction> &preds) {
  std::set<MentionKey> gold_keys = GoldEntityKeys(gold);
  auto by_doc = GoldByDoc(gold);
  ErrorBreakdown b;
  std::set<MentionKey> seen;
  for (const Prediction &p : preds) {
    MentionKey key{p.doc_id, p.sentence, p.start, p.end, p.entity_id};
    if (!seen.insert(key).second || gold_keys.count(key)) continue;
    ++b.false_positives;
    auto it = by_doc.find(p.doc_id);
    if (it == by_doc.end()) continue;
    bool span = false, span_type = false, overlap = false, contained = false;
    for (const Mention *g : it->second) {
      if (SameSpan(*g, p)) {
        span = true;
        if (g->type_id == p.type_id) span_type = true;
        continue;
      }
      if (g->entity_id != p.entity_id || g->sentence != p.sentence) continue;
      if (g->start < p.end && p.start < g->end) {
        overlap = true;
        if (p.start <= g->start && g->end <= p.end) contained = true;
      }
    }
    b.correct_span_bad_entity += span;
    b.correct_span_and_type += span_type;
    b.correct_entity_overlapping += overlap;
    b.correct_entity_contained += contained;
  }
  return b;
}

PrfReport RawCorpusLowerBound(const PrfReport &mention_level, int64_t dropped) {
  PrfReport r = PrfReport::FromCounts(mention_level.tp, mention_level.fp,
                                      mention_level.fn + dropped);
  r.duplicates = mention_level.duplicates;
  return r;
}

PrfReport RawCorpusLowerBound(const std::vector<Document> &gold,
                              const std::vector<Prediction> &preds) {
  int64_t dropped = 0;
  for (const Document &d : gold) dropped += d.dropped_mentions;
  return RawCorpusLowerBound(MentionLevelPrf(gold, preds), dropped);
}

}  // namespace medlink
