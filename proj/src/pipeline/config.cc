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

#include "medlink/pipeline/config.h"

#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "medlink/base/error.h"
#include "medlink/base/text.h"

namespace medlink {

namespace {

namespace pt = boost::property_tree;

std::vector<double> ParseDoubles(const std::string &s) {
  std::vector<double> out;
  for (const std::string &part : Split(s, ',')) {
    std::string t(Trim(part));
    if (!t.empty()) out.push_back(std::stod(t));
  }
  return out;
}

std::vector<int> ParseInts(const std::string &s) {
  std::vector<int> out;
  for (double d : ParseDoubles(s)) out.push_back(static_cast<int>(d));
  return out;
}

bool ParseBool(const std::string &s) {
  std::string t = ToLower(Trim(s));
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw Error("bad boolean value: " + s);
}

// Reads one INI section, recording which keys were consumed.
class Section {
 public:
  Section(const pt::ptree &root, const std::string &name) : name_(name) {
    auto child = root.get_child_optional(name);
    if (child) tree_ = *child;
  }

  template <typename V>
  void Get(const std::string &key, V *value) {
    auto s = Raw(key);
    if (!s) return;
    try {
      if constexpr (std::is_same_v<V, std::string>) {
        *value = *s;
      } else if constexpr (std::is_same_v<V, bool>) {
        *value = ParseBool(*s);
      } else if constexpr (std::is_same_v<V, std::vector<double>>) {
        *value = ParseDoubles(*s);
      } else if constexpr (std::is_same_v<V, std::vector<int>>) {
        *value = ParseInts(*s);
      } else if constexpr (std::is_floating_point_v<V>) {
        *value = static_cast<V>(std::stod(*s));
      } else {
        *value = static_cast<V>(std::stoll(*s));
      }
    } catch (const std::invalid_argument &) {
      throw Error("config [" + name_ + "] " + key + ": bad value '" + *s + "'");
    } catch (const std::out_of_range &) {
      throw Error("config [" + name_ + "] " + key + ": value out of range");
    }
  }

  std::optional<std::string> Raw(const std::string &key) {
    used_.insert(key);
    auto v = tree_.get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return std::string(Trim(*v));
  }

  void CheckUnused() const {
    for (const auto &[key, child] : tree_) {
      if (!used_.count(key)) {
        throw Error("config [" + name_ + "]: unknown key '" + key + "'");
      }
    }
  }

 private:
  std::string name_;
  pt::ptree tree_;
  std::set<std::string> used_;
};

void ReadSchedule(Section *s, TrainSchedule *t) {
  s->Get("epochs", &t->epochs);
  s->Get("lr", &t->lr);
  s->Get("warmup_fraction", &t->warmup_fraction);
  s->Get("clip_norm", &t->clip_norm);
  s->Get("batch_size", &t->batch_size);
  s->Get("patience", &t->patience);
  s->Get("target", &t->target);
}

json ScheduleJson(const TrainSchedule &t) {
  return json{{"epochs", t.epochs},       {"lr", t.lr},
              {"warmup_fraction", t.warmup_fraction},
              {"clip_norm", t.clip_norm}, {"batch_size", t.batch_size},
              {"seed", t.seed},           {"patience", t.patience},
              {"target", t.target}};
}

}  // namespace

PipelineConfig::PipelineConfig() {
  linker_train.epochs = 3;
  linker_train.lr = 2e-5;
  linker_train.batch_size = 1;
  selector_train.epochs = 10;
  selector_train.lr = 5e-6;
  selector_train.batch_size = 64;
}

PipelineConfig PipelineConfig::FromIniString(const std::string &text) {
  pt::ptree root;
  std::istringstream in(text);
  try {
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error &e) {
    throw Error(std::string("config: ") + e.what());
  }
  static const std::set<std::string> kSections = {
      "general", "candgen", "encoder", "head", "vocab", "linker", "selector"};
  for (const auto &[name, child] : root) {
    if (!kSections.count(name)) {
      throw Error("config: unknown section or key '" + name + "'");
    }
  }
  PipelineConfig c;
  Section general(root, "general");
  general.Get("seed", &c.seed);

  Section candgen(root, "candgen");
  candgen.Get("k_s", &c.k_s);
  candgen.Get("k_w", &c.k_w);
  candgen.Get("k_m", &c.k_m);
  candgen.Get("char_features", &c.vectorizers.max_char_features);
  candgen.Get("word_features", &c.vectorizers.max_word_features);
  candgen.Get("min_n", &c.vectorizers.min_n);
  candgen.Get("max_n", &c.vectorizers.max_n);
  candgen.Get("lemmatize", &c.vectorizers.lemmatize);
  candgen.Get("stop_words_file", &c.stop_words_file);

  Section encoder(root, "encoder");
  encoder.Get("hidden", &c.encoder.hidden);
  encoder.Get("layers", &c.encoder.layers);
  encoder.Get("heads", &c.encoder.heads);
  encoder.Get("ff", &c.encoder.ff);
  encoder.Get("max_len", &c.encoder.max_len);
  encoder.Get("ln_eps", &c.encoder.ln_eps);
  encoder.Get("init_std", &c.encoder.init_std);

  Section head(root, "head");
  head.Get("hidden", &c.head.hidden);
  head.Get("embedding_dim", &c.head.embedding_dim);
  head.Get("dropout", &c.head.dropout);
  head.Get("score_bins", &c.head.score_bins);
  head.Get("prob_bins", &c.head.prob_bins);
  head.Get("embedding_init_std", &c.head.embedding_init_std);

  Section vocab(root, "vocab");
  vocab.Get("max_size", &c.vocab_max_size);
  vocab.Get("min_count", &c.vocab_min_count);

  Section linker(root, "linker");
  linker.Get("k_l", &c.k_l);
  ReadSchedule(&linker, &c.linker_train);

  Section selector(root, "selector");
  selector.Get("margin", &c.selector.margin);
  selector.Get("positive_weight", &c.selector.positive_weight);
  selector.Get("positive_weight_sweep", &c.positive_weight_sweep);
  selector.Get("tau", &c.selector.tau);
  if (auto mode = selector.Raw("mode")) {
    c.selector.mode = ParseInferenceMode(*mode);
  }
  selector.Get("negative_ratio", &c.selector.negative_ratio);
  ReadSchedule(&selector, &c.selector_train);

  for (const Section *s : {&general, &candgen, &encoder, &head, &vocab, &linker,
                           &selector}) {
    s->CheckUnused();
  }
  c.linker_train.seed = c.seed;
  c.selector_train.seed = c.seed + 1;
  // Validate early.
  BinningSpec check_s(c.head.score_bins);
  BinningSpec check_l(c.head.prob_bins);
  if (c.k_s < 1 || c.k_m < 1 || c.k_l < 1 || c.k_l > c.k_m) {
    throw Error("config: need k_s >= 1 and 1 <= k_l <= k_m");
  }
  if (c.selector.margin <= 0.0) throw Error("config: margin must be positive");
  return c;
}

PipelineConfig PipelineConfig::Load(const std::string &path) {
  return FromIniString(ReadFile(path));
}

ModelConfig PipelineConfig::LinkerModel() const {
  ModelConfig m;
  m.kind = ModelKind::kLinker;
  m.encoder = encoder;
  m.head = head;
  return m;
}

ModelConfig PipelineConfig::SelectorModel() const {
  ModelConfig m = LinkerModel();
  m.kind = ModelKind::kSelector;
  return m;
}

json PipelineConfig::ToJson() const {
  return json{
      {"seed", seed},
      {"candgen",
       {{"k_s", k_s},
        {"k_w", k_w},
        {"k_m", k_m},
        {"char_features", vectorizers.max_char_features},
        {"word_features", vectorizers.max_word_features},
        {"min_n", vectorizers.min_n},
        {"max_n", vectorizers.max_n},
        {"lemmatize", vectorizers.lemmatize}}},
      {"encoder", encoder.ToJson()},
      {"head", head.ToJson()},
      {"vocab", {{"max_size", vocab_max_size}, {"min_count", vocab_min_count}}},
      {"linker", {{"k_l", k_l}, {"train", ScheduleJson(linker_train)}}},
      {"selector",
       {{"margin", selector.margin},
        {"positive_weight", selector.positive_weight},
        {"positive_weight_sweep", positive_weight_sweep},
        {"tau", selector.tau},
        {"mode", std::string(InferenceModeName(selector.mode))},
        {"negative_ratio", selector.negative_ratio},
        {"train", ScheduleJson(selector_train)}}}};
}

}  // namespace medlink
