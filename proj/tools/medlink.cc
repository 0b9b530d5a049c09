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

// Command-line front end: build-kb, preprocess, train, run, evaluate and
// make-synthetic. Exit codes: 0 success, 1 runtime failure, 2 usage error.
// MEDLINK_LOG_LEVEL sets the log level (trace, debug, info, warn, error, off).

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "medlink/base/error.h"
#include "medlink/base/io.h"
#include "medlink/eval/metrics.h"
#include "medlink/eval/report.h"
#include "medlink/nn/checkpoint.h"
#include "medlink/pipeline/config.h"
#include "medlink/pipeline/pipeline.h"
#include "medlink/pipeline/synthetic.h"

namespace medlink {
namespace {

std::string DocsIn(const std::string &dir) {
  return (std::filesystem::path(dir) / kDocumentsFile).string();
}

PipelineConfig LoadConfig(const std::string &path) {
  return path.empty() ? PipelineConfig() : PipelineConfig::Load(path);
}

void WriteHistory(const std::string &checkpoint, const json &history) {
  WriteFile(checkpoint + ".history.json", history.dump(2) + "\n");
}

struct BuildKbFlags {
  std::string ontology, hierarchy, types, out, config;
};

void BuildKb(const BuildKbFlags &f) {
  BuildKnowledgeBase(f.ontology, f.hierarchy, f.types, f.out,
                     LoadConfig(f.config));
}

struct PreprocessFlags {
  std::string corpus, abbrevs, out;
};

void Preprocess(const PreprocessFlags &f) {
  PreprocessReport report = PreprocessToDirectory(f.corpus, f.abbrevs, f.out);
  std::cout << report.ToJson().dump(2) << "\n";
}

struct TrainFlags {
  std::string stage, kb, corpus, valid, config, out, linker;
};

void Train(const TrainFlags &f) {
  PipelineConfig config = LoadConfig(f.config);
  auto kb = KnowledgeBase::Load(f.kb, config.k_w);
  std::vector<Document> train = ReadDocuments(DocsIn(f.corpus));
  std::vector<Document> valid = train;
  if (f.valid.empty()) {
    spdlog::warn("no --valid corpus; validating on the training corpus");
  } else {
    valid = ReadDocuments(DocsIn(f.valid));
  }
  json meta = {{"config", config.ToJson()},
               {"kb_fingerprint", kb->table().Fingerprint()},
               {"train_documents", train.size()}};
  if (f.stage == "link") {
    LinkerTraining t = TrainLinkerStage(*kb, train, valid, config);
    json history = HistoryToJson(t.result.history);
    meta["stage"] = "link";
    meta["best_epoch"] = t.result.best_epoch;
    meta["best_recall_at_1"] = t.result.best_recall;
    meta["excluded_mentions"] = t.result.excluded;
    meta["history"] = history;
    SaveCheckpoint(f.out, *t.model, meta);
    WriteHistory(f.out, {{"stage", "link"}, {"epochs", history}});
    return;
  }
  if (f.stage != "select") throw UsageError("--stage must be link or select");
  if (f.linker.empty()) throw UsageError("--linker is required for --stage select");
  auto linker = LoadCheckpoint<float>(f.linker);
  SelectorTraining t = TrainSelectorStage(*kb, *linker, train, valid, config);
  json sweep = json::array();
  for (const SweepRow &r : t.sweep) {
    sweep.push_back({{"positive_weight", r.positive_weight},
                     {"validation_document_f1", r.best_f1},
                     {"best_epoch", r.best_epoch}});
  }
  json history = HistoryToJson(t.result.history);
  meta["stage"] = "select";
  meta["positive_weight"] = t.positive_weight;
  meta["best_epoch"] = t.result.best_epoch;
  meta["best_document_f1"] = t.result.best_f1;
  meta["sweep"] = sweep;
  meta["history"] = history;
  SaveCheckpoint(f.out, *t.model, meta);
  WriteHistory(f.out, {{"stage", "select"}, {"sweep", sweep}, {"epochs", history}});
}

struct RunFlags {
  std::string stage, kb, in, out, config, mode;
  std::vector<std::string> models;
  std::optional<double> tau;
};

void Run(const RunFlags &f) {
  PipelineConfig config = LoadConfig(f.config);
  if (!f.mode.empty()) config.selector.mode = ParseInferenceMode(f.mode);
  if (f.tau) config.selector.tau = *f.tau;
  RunOptions options;
  options.stage = ParseStage(f.stage);
  options.kb_dir = f.kb;
  options.in_dir = f.in;
  options.out_dir = f.out;
  options.models = f.models;
  RunStages(options, config);
}

struct EvaluateFlags {
  std::string gold, pred, report = "table", breakdowns = "none", train, out;
};

void Evaluate(const EvaluateFlags &f) {
  std::vector<Document> gold = ReadDocuments(DocsIn(f.gold));
  std::vector<Prediction> preds = ReadPredictionsJsonl(f.pred);
  EvaluationOptions options;
  if (f.breakdowns == "all") {
    options.breakdowns = true;
  } else if (f.breakdowns != "none") {
    throw UsageError("--breakdowns must be all or none");
  }
  if (!f.train.empty()) {
    options.seen_entities = SeenEntities(ReadDocuments(DocsIn(f.train)));
  } else if (options.breakdowns) {
    spdlog::warn("no --train corpus; seen/unseen breakdown skipped");
  }
  EvaluationReport report = medlink::Evaluate(gold, preds, options);
  std::string text;
  if (f.report == "json") {
    text = report.ToJson().dump(2) + "\n";
  } else if (f.report == "table") {
    text = report.ToTable();
  } else {
    throw UsageError("--report must be json or table");
  }
  if (f.out.empty()) {
    std::cout << text;
  } else {
    WriteFile(f.out, text);
  }
}

struct SyntheticFlags {
  std::string out;
  SyntheticOptions options;
  int extra_concepts = 0;
  std::string extra_out;
};

void MakeSynthetic(const SyntheticFlags &f) {
  SyntheticData data = GenerateSynthetic(f.options);
  data.Write(f.out);
  if (f.extra_concepts > 0) {
    if (f.extra_out.empty()) throw UsageError("--extra-out is required with --extra-concepts");
    AddSyntheticConcepts(&data, f.extra_concepts, f.options.seed + 1);
    data.Write(f.extra_out);
  }
  spdlog::info("synthetic: {} concepts, {} documents", data.concepts.size(),
               data.documents.size());
}

void SetLogLevel() {
  spdlog::set_default_logger(spdlog::stderr_color_mt("medlink"));
  spdlog::set_pattern("[%H:%M:%S] [%l] %v");
  if (const char *level = std::getenv("MEDLINK_LOG_LEVEL")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

int Main(int argc, char **argv) {
  CLI::App app{"medlink: biomedical mention recognition and linking"};
  app.require_subcommand(1);

  BuildKbFlags kb;
  auto *build = app.add_subcommand("build-kb", "Build the alias table and lexical index");
  build->add_option("--ontology", kb.ontology, "Ontology TSV")->required()->check(CLI::ExistingFile);
  build->add_option("--hierarchy", kb.hierarchy, "Type hierarchy TSV")->required()->check(CLI::ExistingFile);
  build->add_option("--types", kb.types, "Selected types file")->required()->check(CLI::ExistingFile);
  build->add_option("--out", kb.out, "Output directory")->required();
  build->add_option("--config", kb.config, "Pipeline config (INI)")->check(CLI::ExistingFile);

  PreprocessFlags pre;
  auto *preprocess = app.add_subcommand("preprocess", "Preprocess a PubTator corpus");
  preprocess->add_option("--corpus", pre.corpus, "PubTator file")->required()->check(CLI::ExistingFile);
  preprocess->add_option("--abbrevs", pre.abbrevs, "Abbreviation TSV; disables detection")->check(CLI::ExistingFile);
  preprocess->add_option("--out", pre.out, "Output directory")->required();

  TrainFlags tr;
  auto *train = app.add_subcommand("train", "Train the linker or the selector");
  train->add_option("--stage", tr.stage, "link or select")->required()->check(CLI::IsMember({"link", "select"}));
  train->add_option("--kb", tr.kb, "KB directory")->required()->check(CLI::ExistingDirectory);
  train->add_option("--corpus", tr.corpus, "Preprocessed training directory")->required()->check(CLI::ExistingDirectory);
  train->add_option("--valid", tr.valid, "Preprocessed validation directory")->check(CLI::ExistingDirectory);
  train->add_option("--config", tr.config, "Pipeline config (INI)")->check(CLI::ExistingFile);
  train->add_option("--linker", tr.linker, "Linker checkpoint (select stage)")->check(CLI::ExistingFile);
  train->add_option("--out", tr.out, "Checkpoint path")->required();

  RunFlags rn;
  auto *run = app.add_subcommand("run", "Run pipeline stages");
  run->add_option("--stage", rn.stage, "candgen, link, select or all")->required()->check(CLI::IsMember({"candgen", "link", "select", "all"}));
  run->add_option("--kb", rn.kb, "KB directory")->required()->check(CLI::ExistingDirectory);
  run->add_option("--in", rn.in, "Input directory")->required()->check(CLI::ExistingDirectory);
  run->add_option("--model", rn.models, "Checkpoint (repeatable)")->check(CLI::ExistingFile);
  run->add_option("--mode", rn.mode, "threshold or greedy")->check(CLI::IsMember({"threshold", "greedy"}));
  run->add_option("--tau", rn.tau, "Selector threshold");
  run->add_option("--config", rn.config, "Pipeline config (INI)")->check(CLI::ExistingFile);
  run->add_option("--out", rn.out, "Output directory")->required();

  EvaluateFlags ev;
  auto *evaluate = app.add_subcommand("evaluate", "Score predictions against gold");
  evaluate->add_option("--gold", ev.gold, "Preprocessed gold directory")->required()->check(CLI::ExistingDirectory);
  evaluate->add_option("--pred", ev.pred, "Predictions JSONL")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--report", ev.report, "json or table")->check(CLI::IsMember({"json", "table"}));
  evaluate->add_option("--breakdowns", ev.breakdowns, "all or none")->check(CLI::IsMember({"all", "none"}));
  evaluate->add_option("--train", ev.train, "Preprocessed training directory (seen/unseen)")->check(CLI::ExistingDirectory);
  evaluate->add_option("--out", ev.out, "Write the report here instead of stdout");

  SyntheticFlags sy;
  auto *synth = app.add_subcommand("make-synthetic", "Write a synthetic ontology and corpus");
  synth->add_option("--out", sy.out, "Output directory")->required();
  synth->add_option("--concepts", sy.options.concepts, "Number of concepts");
  synth->add_option("--documents", sy.options.documents, "Number of documents");
  synth->add_option("--seed", sy.options.seed, "Random seed");
  synth->add_option("--extra-concepts", sy.extra_concepts, "Also write a superset ontology with this many more concepts");
  synth->add_option("--extra-out", sy.extra_out, "Directory for the superset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*build) BuildKb(kb);
    if (*preprocess) Preprocess(pre);
    if (*train) Train(tr);
    if (*run) Run(rn);
    if (*evaluate) Evaluate(ev);
    if (*synth) MakeSynthetic(sy);
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace medlink

int main(int argc, char **argv) {
  medlink::SetLogLevel();
  return medlink::Main(argc, argv);
}
