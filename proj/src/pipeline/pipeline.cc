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

#include "medlink/pipeline/pipeline.h"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <spdlog/spdlog.h>

#include "medlink/base/error.h"
#include "medlink/eval/metrics.h"
#include "medlink/kb/name-cleaner.h"
#include "medlink/kb/type-hierarchy.h"
#include "medlink/nn/checkpoint.h"
#include "medlink/preprocess/abbreviations.h"
#include "medlink/preprocess/iob2.h"
#include "medlink/preprocess/pubtator.h"

namespace medlink {

namespace fs = std::filesystem;

namespace {

std::string PathIn(const std::string &dir, const char *name) {
  return (fs::path(dir) / name).string();
}

void EnsureDirectory(const std::string &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create directory " + dir + ": " + ec.message());
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       since)
      .count();
}

std::vector<std::string> AliasNames(const AliasTable &table) {
  std::vector<std::string> names;
  names.reserve(table.size());
  for (const AliasEntry &e : table.entries()) names.push_back(e.name);
  return names;
}

InputBuilder MakeInputs(const KnowledgeBase &kb,
                        const ScoringModel<float> &model,
                        const std::vector<Document> &docs) {
  InputBuilder inputs(&model.vocab(), &kb.table(),
                      model.config().encoder.max_len);
  inputs.AddDocuments(docs);
  return inputs;
}

void CheckKind(const ScoringModel<float> &model, ModelKind kind) {
  if (model.kind() != kind) {
    throw Error("expected a " + std::string(ModelKindName(kind)) +
                " checkpoint, got " + std::string(ModelKindName(model.kind())));
  }
}

}  // namespace

KnowledgeBase::KnowledgeBase(AliasTable table,
                             const VectorizerOptions &options, double k_w)
    : table_(std::move(table)) {
  if (table_.size() == 0) throw Error("alias table is empty");
  matcher_ = std::make_unique<LexicalMatcher>(
      &table_, Vectorizers::Fit(AliasNames(table_), options), k_w);
}

std::unique_ptr<KnowledgeBase> KnowledgeBase::Load(const std::string &dir,
                                                   double k_w) {
  std::unique_ptr<KnowledgeBase> kb(new KnowledgeBase());
  kb->table_ = AliasTable::ReadJsonl(PathIn(dir, kAliasFile));
  if (kb->table_.size() == 0) throw Error("alias table is empty: " + dir);
  Vectorizers vectorizers = Vectorizers::Load(PathIn(dir, kVectorizerFile));
  kb->matcher_ = std::make_unique<LexicalMatcher>(LexicalMatcher::LoadIndex(
      PathIn(dir, kIndexFile), &kb->table_, std::move(vectorizers), k_w));
  return kb;
}

void KnowledgeBase::Save(const std::string &dir) const {
  EnsureDirectory(dir);
  table_.WriteJsonl(PathIn(dir, kAliasFile));
  matcher_->vectorizers().Save(PathIn(dir, kVectorizerFile));
  matcher_->SaveIndex(PathIn(dir, kIndexFile));
}

AliasBuildReport BuildKnowledgeBase(const std::string &ontology_path,
                                    const std::string &hierarchy_path,
                                    const std::string &types_path,
                                    const std::string &out_dir,
                                    const PipelineConfig &config) {
  TypeHierarchy hierarchy = TypeHierarchy::Load(hierarchy_path, types_path);
  std::vector<OntologyRecord> records = ReadOntologyTsv(ontology_path);
  AliasBuildReport report;
  AliasTable table =
      AliasTable::Build(records, hierarchy, NameCleaner(), &report);
  if (table.size() == 0) {
    throw Error("alias table is empty after filtering " +
                std::to_string(report.records) + " records");
  }
  KnowledgeBase kb(std::move(table), config.vectorizers, config.k_w);
  kb.Save(out_dir);
  json j = {{"records", report.records},
            {"kept", report.kept},
            {"entities", kb.table().num_entities()},
            {"malformed", report.malformed},
            {"unmapped_type", report.unmapped_type},
            {"rejected_name", report.rejected_name},
            {"duplicates", report.duplicates},
            {"missing_primary", report.missing_primary},
            {"demoted_primaries", report.demoted_primaries},
            {"char_features", kb.matcher().vectorizers().chars().num_features()},
            {"word_features", kb.matcher().vectorizers().words().num_features()},
            {"postings", kb.matcher().num_postings()}};
  json by_type = json::object();
  for (int t = 0; t < kNumNameTypes; ++t) {
    by_type[std::string(NameTypeName(static_cast<NameType>(t)))] =
        report.by_name_type[t];
  }
  j["by_name_type"] = by_type;
  WriteFile(PathIn(out_dir, kKbReportFile), j.dump(2) + "\n");
  spdlog::info("alias table: {} names for {} entities ({} records discarded)",
               kb.table().size(), kb.table().num_entities(),
               report.discarded());
  return report;
}

PreprocessReport PreprocessToDirectory(const std::string &corpus_path,
                                       const std::string &abbrevs_path,
                                       const std::string &out_dir) {
  std::vector<RawDocument> raw = ReadPubTatorFile(corpus_path);
  PreprocessOptions options;
  if (!abbrevs_path.empty()) {
    options.detect_abbreviations = false;
    options.external_abbreviations = ReadAbbrevTsv(abbrevs_path);
  }
  PreprocessReport report;
  std::vector<Document> docs = PreprocessCorpus(raw, options, &report);
  EnsureDirectory(out_dir);
  WriteDocuments(PathIn(out_dir, kDocumentsFile), docs);
  std::ostringstream iob;
  for (const Document &d : docs) WriteIob2(iob, d);
  WriteFile(PathIn(out_dir, kIob2File), iob.str());
  WriteFile(PathIn(out_dir, kPreprocessReportFile),
            report.ToJson().dump(2) + "\n");
  spdlog::info("preprocessed {} documents: {} of {} mentions kept",
               report.documents, report.kept_mentions, report.raw_mentions);
  return report;
}

StopList LoadStopList(const PipelineConfig &config) {
  return config.stop_words_file.empty() ? StopList::Default()
                                        : StopList::Load(config.stop_words_file);
}

Vocabulary BuildModelVocabulary(const std::vector<Document> &docs,
                                const AliasTable &table,
                                const PipelineConfig &config) {
  VocabularyBuilder builder;
  for (const Document &d : docs) builder.Add(d.text);
  for (const AliasEntry &e : table.entries()) builder.Add(table.SelectorText(e));
  for (const std::string &id : table.EntityIds()) {
    builder.Add(table.LinkerText(id));
  }
  return builder.Build(config.vocab_max_size, config.vocab_min_count);
}

std::vector<SpanCandidates> RunCandidateGeneration(
    const KnowledgeBase &kb, const std::vector<Document> &docs,
    const PipelineConfig &config) {
  return GenerateCandidates(docs, kb.matcher(), LoadStopList(config),
                            config.k_s, config.k_m);
}

void RunLinker(const KnowledgeBase &kb, const ScoringModel<float> &linker,
               const std::vector<Document> &docs, const PipelineConfig &config,
               std::vector<SpanCandidates> *spans) {
  CheckKind(linker, ModelKind::kLinker);
  InputBuilder inputs = MakeInputs(kb, linker, docs);
  LinkSpans(linker, &inputs, spans, config.k_l);
}

std::vector<Prediction> RunSelector(const KnowledgeBase &kb,
                                    const ScoringModel<float> &selector,
                                    const std::vector<Document> &docs,
                                    const std::vector<SpanCandidates> &linked,
                                    const PipelineConfig &config) {
  CheckKind(selector, ModelKind::kSelector);
  InputBuilder inputs = MakeInputs(kb, selector, docs);
  std::vector<SelectorSample> samples = MakeSelectorSamples(linked, docs);
  return Infer(ScoreSamples(selector, &inputs, samples), config.selector);
}

std::vector<Prediction> Predict(const KnowledgeBase &kb,
                                const ScoringModel<float> &linker,
                                const ScoringModel<float> &selector,
                                const std::vector<Document> &docs,
                                const PipelineConfig &config) {
  std::vector<SpanCandidates> spans = RunCandidateGeneration(kb, docs, config);
  RunLinker(kb, linker, docs, config, &spans);
  return RunSelector(kb, selector, docs, spans, config);
}

LinkerTraining TrainLinkerStage(const KnowledgeBase &kb,
                                const std::vector<Document> &train,
                                const std::vector<Document> &valid,
                                const PipelineConfig &config) {
  LinkerTraining out;
  out.model = std::make_unique<ScoringModel<float>>(
      config.LinkerModel(), BuildModelVocabulary(train, kb.table(), config));
  out.model->Init(config.linker_train.seed);
  spdlog::info("linker: {} parameters, vocabulary {}", out.model->NumParams(),
               out.model->vocab().size());
  std::vector<LinkerExample> train_examples =
      MakeLinkerExamples(train, kb.matcher(), config.k_m);
  std::vector<LinkerExample> valid_examples =
      MakeLinkerExamples(valid, kb.matcher(), config.k_m);
  InputBuilder inputs(&out.model->vocab(), &kb.table(), config.encoder.max_len);
  inputs.AddDocuments(train);
  inputs.AddDocuments(valid);
  out.result = TrainLinker(out.model.get(), &inputs, train_examples,
                           valid_examples, config.linker_train);
  return out;
}

SelectorTraining TrainSelectorStage(const KnowledgeBase &kb,
                                    const ScoringModel<float> &linker,
                                    const std::vector<Document> &train,
                                    const std::vector<Document> &valid,
                                    const PipelineConfig &config) {
  CheckKind(linker, ModelKind::kLinker);
  std::vector<SpanCandidates> train_linked =
      RunCandidateGeneration(kb, train, config);
  RunLinker(kb, linker, train, config, &train_linked);
  std::vector<SpanCandidates> valid_linked =
      RunCandidateGeneration(kb, valid, config);
  RunLinker(kb, linker, valid, config, &valid_linked);
  std::vector<SelectorSample> train_samples =
      MakeSelectorSamples(train_linked, train);
  std::vector<SelectorSample> valid_samples =
      MakeSelectorSamples(valid_linked, valid);

  std::vector<double> weights = config.positive_weight_sweep;
  if (weights.empty()) weights.push_back(config.selector.positive_weight);

  SelectorTraining best;
  for (double w : weights) {
    SelectorConfig sc = config.selector;
    sc.positive_weight = w;
    auto model = std::make_unique<ScoringModel<float>>(config.SelectorModel(),
                                                       linker.vocab());
    model->Init(config.selector_train.seed);
    InputBuilder inputs(&model->vocab(), &kb.table(), config.encoder.max_len);
    inputs.AddDocuments(train);
    inputs.AddDocuments(valid);
    SelectorValidator validate = [&](const ScoringModel<float> &m) {
      std::vector<Prediction> preds =
          Infer(ScoreSamples(m, &inputs, valid_samples), sc);
      return DocumentLevelPrf(valid, preds).f1;
    };
    spdlog::info("selector: training with W+ = {}", w);
    SelectorTrainResult result = TrainSelector(
        model.get(), &inputs, train_samples, sc, config.selector_train, validate);
    best.sweep.push_back({w, result.best_f1, result.best_epoch});
    spdlog::info("selector sweep: W+ = {} validation document F1 {:.4f}", w,
                 result.best_f1);
    if (!best.model || result.best_f1 > best.result.best_f1) {
      best.model = std::move(model);
      best.result = result;
      best.positive_weight = w;
    }
  }
  return best;
}

json HistoryToJson(const std::vector<EpochRecord> &history) {
  json out = json::array();
  for (const EpochRecord &r : history) {
    out.push_back({{"epoch", r.epoch},
                   {"train_loss", r.train_loss},
                   {"metric", r.metric},
                   {"seconds", r.seconds}});
  }
  return out;
}

Stage ParseStage(std::string_view name) {
  if (name == "candgen") return Stage::kCandgen;
  if (name == "link") return Stage::kLink;
  if (name == "select") return Stage::kSelect;
  if (name == "all") return Stage::kAll;
  throw UsageError("unknown stage: " + std::string(name));
}

std::string_view StageName(Stage stage) {
  switch (stage) {
    case Stage::kCandgen:
      return "candgen";
    case Stage::kLink:
      return "link";
    case Stage::kSelect:
      return "select";
    case Stage::kAll:
      return "all";
  }
  return "?";
}

std::vector<StageTiming> RunStages(const RunOptions &options,
                                   const PipelineConfig &config) {
  std::unique_ptr<ScoringModel<float>> linker, selector;
  for (const std::string &path : options.models) {
    auto model = LoadCheckpoint<float>(path);
    auto &slot = model->kind() == ModelKind::kLinker ? linker : selector;
    if (slot) throw UsageError("two checkpoints of the same kind: " + path);
    slot = std::move(model);
  }
  const bool need_linker =
      options.stage == Stage::kLink || options.stage == Stage::kAll;
  const bool need_selector =
      options.stage == Stage::kSelect || options.stage == Stage::kAll;
  if (need_linker && !linker) throw UsageError("--model: linker checkpoint required");
  if (need_selector && !selector) {
    throw UsageError("--model: selector checkpoint required");
  }

  auto kb = KnowledgeBase::Load(options.kb_dir, config.k_w);
  std::vector<Document> docs =
      ReadDocuments(PathIn(options.in_dir, kDocumentsFile));
  EnsureDirectory(options.out_dir);
  std::vector<StageTiming> timings;
  std::vector<SpanCandidates> spans;

  if (options.stage == Stage::kCandgen || options.stage == Stage::kAll) {
    auto start = std::chrono::steady_clock::now();
    spans = RunCandidateGeneration(*kb, docs, config);
    WriteSpanCandidates(PathIn(options.out_dir, kCandidatesFile), spans);
    timings.push_back({"candgen", Seconds(start),
                       static_cast<int64_t>(spans.size())});
  }
  if (need_linker) {
    if (options.stage == Stage::kLink) {
      spans = ReadSpanCandidates(PathIn(options.in_dir, kCandidatesFile));
    }
    auto start = std::chrono::steady_clock::now();
    RunLinker(*kb, *linker, docs, config, &spans);
    WriteSpanCandidates(PathIn(options.out_dir, kLinkedFile), spans);
    timings.push_back({"link", Seconds(start),
                       static_cast<int64_t>(spans.size())});
  }
  if (need_selector) {
    if (options.stage == Stage::kSelect) {
      spans = ReadSpanCandidates(PathIn(options.in_dir, kLinkedFile));
    }
    auto start = std::chrono::steady_clock::now();
    std::vector<Prediction> preds =
        RunSelector(*kb, *selector, docs, spans, config);
    WritePredictionsJsonl(PathIn(options.out_dir, kPredictionsFile), preds,
                          docs);
    WritePredictionsPubTator(PathIn(options.out_dir, kPredictionsPubTatorFile),
                             preds, docs);
    timings.push_back({"select", Seconds(start),
                       static_cast<int64_t>(preds.size())});
  }

  json log = json::array();
  for (const StageTiming &t : timings) {
    spdlog::info("stage {}: {} items in {:.2f}s", t.stage, t.items, t.seconds);
    log.push_back({{"stage", t.stage}, {"seconds", t.seconds}, {"items", t.items}});
  }
  WriteFile(PathIn(options.out_dir, kTimingFile), log.dump(2) + "\n");
  return timings;
}

}  // namespace medlink
