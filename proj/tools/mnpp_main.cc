// Copyright 2026 The MNPP Forge Authors.
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

// mnpp: forge masked noun-phrase prediction datasets from raw text, then
// train and evaluate the linear baseline on them.
//
// Exit status: 0 success, 1 fatal error (one line on stderr), 2 usage error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "mnpp/baseline.h"
#include "mnpp/common.h"
#include "mnpp/config.h"
#include "mnpp/dataset_assembly.h"
#include "mnpp/difficulty.h"
#include "mnpp/downstream.h"
#include "mnpp/pipeline.h"
#include "mnpp/records.h"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kOracleModel = "builtin:oracle";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string config;
  std::optional<uint64_t> seed;
  unsigned jobs = mnpp::DefaultJobs();
  std::string out;
  bool quiet = false;
};

struct Options {
  std::vector<std::string> data;
  std::string model;
  std::string adapter = "mnpp";
  std::string tag;
  std::string embeddings;
  std::string bucket;
  std::string predict;
  std::string points;
  std::string train;
  std::string dev;
  bool per_bucket = false;
  std::optional<size_t> target_size;
  std::optional<double> dev_fraction;
  std::optional<double> learning_rate;
  std::optional<int> epochs;
  std::optional<int> batch_size;
  std::optional<double> l2;
};

class Command {
 public:
  Command(const Globals& g, const Options& o) : g_(g), o_(o) {
    if (!g_.config.empty()) {
      cfg_ = mnpp::LoadRunConfig(g_.config);
      if (g_.seed) cfg_->SetSeed(*g_.seed);
    }
  }

  int Forge();
  int Bucket();
  int Assemble();
  int Convert();
  int Train();
  int Eval();
  int Auc();
  int Stats();

 private:
  std::ostream* Log() const { return g_.quiet ? nullptr : &std::cerr; }

  uint64_t Seed() const {
    if (g_.seed) return *g_.seed;
    return cfg_ ? cfg_->seed : 13;
  }

  fs::path OutDir(const char* fallback) const {
    if (!g_.out.empty()) return g_.out;
    if (cfg_) return cfg_->out_dir;
    return fallback;
  }

  const std::string& SingleData() const {
    if (o_.data.size() != 1) throw UsageError("exactly one --data PATH is required");
    return o_.data.front();
  }

  mnpp::Adapter ParsedAdapter() const {
    const auto adapter = mnpp::ParseAdapter(o_.adapter);
    if (!adapter) throw UsageError("--adapter must be mnpp, placeholder, pronoun or copa");
    return *adapter;
  }

  std::vector<mnpp::BinaryChoiceExample> ReadExamples(const fs::path& path) const {
    auto result = mnpp::ConvertFile(path, ParsedAdapter(), o_.tag);
    if (result.errors > 0) {
      if (Log()) {
        for (const auto& m : result.messages) *Log() << "error: " << m << "\n";
      }
      throw mnpp::Error("schema mismatch: " + std::to_string(result.errors) +
                        " bad record(s); first: " + result.messages.front());
    }
    return std::move(result.examples);
  }

  mnpp::EmbeddingTable TrainingEmbeddings() const {
    if (!o_.embeddings.empty()) return mnpp::LoadEmbeddings(o_.embeddings);
    if (cfg_ && cfg_->training_embeddings) return mnpp::LoadEmbeddings(*cfg_->training_embeddings);
    throw UsageError("--embeddings PATH is required (or training.embeddings in --config)");
  }

  const Globals& g_;
  const Options& o_;
  std::optional<mnpp::RunConfig> cfg_;
};

int Command::Forge() {
  if (!cfg_) throw UsageError("forge requires --config PATH");
  if (!g_.out.empty()) cfg_->SetOutDir(g_.out);
  const auto result = mnpp::Forge(*cfg_, g_.jobs, Log());
  std::cout << result.manifest.ToJson();
  return 0;
}

int Command::Bucket() {
  fs::path emb_path = o_.embeddings;
  if (emb_path.empty() && cfg_ && cfg_->embeddings) emb_path = *cfg_->embeddings;
  if (emb_path.empty()) {
    throw UsageError("--embeddings PATH is required (or difficulty.embeddings in --config)");
  }
  std::optional<mnpp::Bucket> keep;
  if (!o_.bucket.empty()) {
    keep = mnpp::ParseBucket(o_.bucket);
    if (!keep) throw UsageError("--bucket must be easy, medium or hard");
  } else if (cfg_) {
    keep = cfg_->assembly.bucket_filter;
  }

  const auto instances = mnpp::ReadInstances(SingleData());
  if (instances.empty()) throw mnpp::Error("nothing to bucketize");
  const auto table = mnpp::LoadEmbeddings(emb_path);
  auto annotated =
      mnpp::Annotate(mnpp::Bucketize(mnpp::ScoreInstances(instances, table, g_.jobs)));

  std::map<std::string, uint64_t> counts = {{"easy", 0}, {"medium", 0}, {"hard", 0}};
  uint64_t missing = 0;
  std::vector<mnpp::MnppInstance> kept;
  for (auto& inst : annotated) {
    counts[std::string(mnpp::BucketName(inst.difficulty->bucket))]++;
    if (!inst.difficulty->similarity) missing++;
    if (!keep || inst.difficulty->bucket == *keep) kept.push_back(std::move(inst));
  }
  const fs::path out_dir = OutDir("bucketed");
  fs::create_directories(out_dir);
  const fs::path out_file = out_dir / "bucketed.jsonl";
  mnpp::WriteInstances(out_file, kept);

  json report = {{"input", instances.size()},
                 {"written", kept.size()},
                 {"missing_similarity", missing},
                 {"buckets", counts},
                 {"output", out_file.string()}};
  std::cout << report.dump(2) << "\n";
  return 0;
}

int Command::Assemble() {
  if (o_.data.empty()) throw UsageError("assemble requires at least one --data PATH");
  mnpp::AssemblyConfig acfg = cfg_ ? cfg_->assembly : mnpp::AssemblyConfig{};
  acfg.seed = Seed();
  if (o_.target_size) acfg.target_size = *o_.target_size;
  if (o_.dev_fraction) acfg.dev_fraction = *o_.dev_fraction;
  if (!o_.bucket.empty()) {
    acfg.bucket_filter = mnpp::ParseBucket(o_.bucket);
    if (!acfg.bucket_filter) throw UsageError("--bucket must be easy, medium or hard");
  }
  acfg.Validate();

  std::vector<mnpp::MnppInstance> all;
  for (const auto& path : o_.data) {
    auto part = mnpp::ReadInstances(path);
    all.insert(all.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  if (acfg.bucket_filter) {
    std::erase_if(all, [&](const mnpp::MnppInstance& inst) {
      if (!inst.difficulty) throw mnpp::Error("bucket filter needs bucketed input");
      return inst.difficulty->bucket != *acfg.bucket_filter;
    });
  }
  size_t removed = 0;
  if (acfg.dedup) all = mnpp::Deduplicate(std::move(all), &removed);
  all = mnpp::SampleToSize(std::move(all), acfg);
  if (all.empty()) throw mnpp::Error("nothing to emit");
  auto split = mnpp::SplitTrainDev(std::move(all), acfg.dev_fraction, acfg.seed);

  std::string hash_doc = "assemble\n";
  for (const auto& path : o_.data) hash_doc += "data=" + path + "\n";
  hash_doc += "seed=" + std::to_string(acfg.seed) + "\n";
  hash_doc += "dev_fraction=" + mnpp::FormatDouble(acfg.dev_fraction) + "\n";
  hash_doc += "target_size=" + (acfg.target_size ? std::to_string(*acfg.target_size) : "all") + "\n";
  hash_doc += "dedup=" + std::to_string(acfg.dedup) + "\n";
  if (cfg_) hash_doc += "config=" + cfg_->ConfigHash() + "\n";
  const auto manifest = mnpp::EmitDataset(split, OutDir("dataset"),
                                          {cfg_ ? cfg_->name : "mnpp", mnpp::Sha256Hex(hash_doc)});
  if (Log()) *Log() << "assemble: duplicates_removed=" << removed << "\n";
  std::cout << manifest.ToJson();
  return 0;
}

int Command::Convert() {
  const auto examples = ReadExamples(SingleData());
  std::string body;
  for (const auto& ex : examples) body += mnpp::ToJsonLine(ex) + "\n";
  if (g_.out.empty()) {
    std::cout << body;
  } else {
    fs::create_directories(g_.out);
    const std::string tag =
        o_.tag.empty() ? std::string(mnpp::AdapterName(ParsedAdapter())) : o_.tag;
    const fs::path out_file = fs::path(g_.out) / (tag + ".jsonl");
    mnpp::WriteFile(out_file, body);
    if (Log()) *Log() << "convert: " << examples.size() << " examples -> " << out_file.string() << "\n";
  }
  return 0;
}

int Command::Train() {
  if (o_.train.empty() || o_.dev.empty()) throw UsageError("train requires --train and --dev");
  mnpp::TrainConfig tcfg = cfg_ ? cfg_->training : mnpp::TrainConfig{};
  tcfg.seed = Seed();
  if (o_.learning_rate) tcfg.learning_rate = *o_.learning_rate;
  if (o_.epochs) tcfg.epochs = *o_.epochs;
  if (o_.batch_size) tcfg.batch_size = *o_.batch_size;
  if (o_.l2) tcfg.l2 = *o_.l2;
  tcfg.Validate();

  const auto table = TrainingEmbeddings();
  const auto train = ReadExamples(o_.train);
  const auto dev = ReadExamples(o_.dev);
  const auto result = mnpp::Train(train, dev, table, tcfg, g_.jobs);

  const fs::path out_dir = OutDir("model");
  fs::create_directories(out_dir);
  mnpp::WriteFile(out_dir / "model.json", result.model.ToJson());
  mnpp::WriteFile(out_dir / "train_log.csv", result.LogCsv());

  const auto& best = result.log.at(static_cast<size_t>(result.best_epoch));
  json summary = {{"train", train.size()},
                  {"dev", dev.size()},
                  {"best_epoch", result.best_epoch},
                  {"dev_accuracy", best.dev_accuracy},
                  {"model", (out_dir / "model.json").string()}};
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int Command::Eval() {
  if (o_.model.empty()) throw UsageError("eval requires --model PATH (or builtin:oracle)");
  const auto examples = ReadExamples(SingleData());

  std::optional<mnpp::EmbeddingTable> table;
  std::optional<mnpp::BaselineModel> model;
  mnpp::Scorer scorer;
  if (o_.model == kOracleModel) {
    scorer = mnpp::MakeOracleScorer(examples);
  } else {
    model = mnpp::BaselineModel::FromJson(mnpp::ReadFile(o_.model));
    table = TrainingEmbeddings();
    if (model->weights.size() != mnpp::FeatureDim(table->dim())) {
      throw mnpp::Error("model dim " + std::to_string(model->weights.size()) +
                        " does not match embeddings (expected " +
                        std::to_string(mnpp::FeatureDim(table->dim())) + ")");
    }
    scorer = mnpp::MakeModelScorer(*model, *table);
  }

  bool labeled = true;
  for (const auto& ex : examples) labeled = labeled && ex.answer.has_value();

  if (!o_.predict.empty()) {
    mnpp::WriteFile(o_.predict, mnpp::PredictionsCsv(examples, scorer));
  }
  if (labeled && !examples.empty()) {
    std::cout << mnpp::Evaluate(examples, scorer, o_.per_bucket).ToJson() << "\n";
    return 0;
  }
  if (o_.predict.empty()) {
    throw mnpp::Error("unlabeled data: pass --predict PATH to export predictions");
  }
  json summary = {{"dataset_tag", examples.empty() ? o_.adapter : examples.front().dataset_tag},
                  {"n", examples.size()},
                  {"predictions", o_.predict}};
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int Command::Auc() {
  if (o_.points.empty()) throw UsageError("auc requires --points PATH");
  const auto points = mnpp::ParseLearningCurveCsv(mnpp::ReadFile(o_.points));
  json out = {{"points", points.size()}, {"auc", mnpp::LearningCurveAuc(points)}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int Command::Stats() {
  const auto instances = mnpp::ReadInstances(SingleData());
  std::map<std::string, uint64_t> per_source;
  std::map<std::string, uint64_t> per_bucket;
  std::map<std::string, uint64_t> docs;
  uint64_t missing = 0;
  for (const auto& inst : instances) {
    per_source[inst.source_tag]++;
    docs[inst.doc_id]++;
    if (inst.difficulty) {
      per_bucket[std::string(mnpp::BucketName(inst.difficulty->bucket))]++;
      if (!inst.difficulty->similarity) missing++;
    }
  }
  json out = {{"total", instances.size()},
              {"documents", docs.size()},
              {"per_source_counts", per_source}};
  if (!instances.empty()) out["label_balance"] = mnpp::LabelBalance(instances);
  if (!per_bucket.empty()) {
    out["per_bucket_counts"] = per_bucket;
    out["missing_similarity"] = missing;
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forge masked noun-phrase prediction datasets and evaluate the linear baseline."};
  app.set_version_flag("--version", std::string(mnpp::kToolVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  Options o;
  app.add_option("--config", g.config, "Run configuration (INI)")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Global seed; overrides run.seed");
  app.add_option("--jobs", g.jobs, "Worker threads for parallel stages")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--out", g.out, "Output directory");
  app.add_flag("--quiet", g.quiet, "Suppress progress counters on stderr");

  auto* forge = app.add_subcommand("forge", "Corpus to train/dev/manifest in one run");

  auto* bucket = app.add_subcommand("bucket", "Annotate instances with difficulty buckets");
  bucket->add_option("--data", o.data, "Instance JSONL")->required()->expected(1);
  bucket->add_option("--embeddings", o.embeddings, "Embedding table (text format)");
  bucket->add_option("--bucket", o.bucket, "Keep only this bucket (easy|medium|hard)");

  auto* assemble = app.add_subcommand("assemble", "Dedup, sample and split instance files");
  assemble->add_option("--data", o.data, "Instance JSONL (repeatable)")->required();
  assemble->add_option("--target-size", o.target_size, "Sample this many instances");
  assemble->add_option("--dev-fraction", o.dev_fraction, "Fraction of instances for dev");
  assemble->add_option("--bucket", o.bucket, "Keep only this bucket (easy|medium|hard)");

  auto* convert = app.add_subcommand("convert", "Convert a dataset to binary-choice JSONL");
  convert->add_option("--data", o.data, "Input records")->required()->expected(1);
  convert->add_option("--adapter", o.adapter, "mnpp|placeholder|pronoun|copa")
      ->capture_default_str();
  convert->add_option("--tag", o.tag, "Dataset tag written into each example");

  auto* train = app.add_subcommand("train", "Train the linear baseline");
  train->add_option("--train", o.train, "Training records")->required();
  train->add_option("--dev", o.dev, "Dev records")->required();
  train->add_option("--adapter", o.adapter, "mnpp|placeholder|pronoun|copa")
      ->capture_default_str();
  train->add_option("--embeddings", o.embeddings, "Embedding table (text format)");
  train->add_option("--learning-rate", o.learning_rate, "Step size");
  train->add_option("--epochs", o.epochs, "Number of epochs");
  train->add_option("--batch-size", o.batch_size, "Mini-batch size");
  train->add_option("--l2", o.l2, "L2 penalty");

  auto* eval = app.add_subcommand("eval", "Score a dataset with a model");
  eval->add_option("--model", o.model, "Model JSON, or builtin:oracle")->required();
  eval->add_option("--data", o.data, "Records to score")->required()->expected(1);
  eval->add_option("--adapter", o.adapter, "mnpp|placeholder|pronoun|copa")
      ->capture_default_str();
  eval->add_option("--embeddings", o.embeddings, "Embedding table the model was trained with");
  eval->add_option("--tag", o.tag, "Dataset tag for the report");
  eval->add_flag("--per-bucket", o.per_bucket, "Report accuracy per difficulty bucket");
  eval->add_option("--predict", o.predict, "Write predictions CSV here");

  auto* auc = app.add_subcommand("auc", "Area under a learning curve");
  auc->add_option("--points", o.points, "CSV with header size,accuracy")->required();

  auto* stats = app.add_subcommand("stats", "Summarize an instance file");
  stats->add_option("--data", o.data, "Instance JSONL")->required()->expected(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    Command cmd(g, o);
    if (forge->parsed()) return cmd.Forge();
    if (bucket->parsed()) return cmd.Bucket();
    if (assemble->parsed()) return cmd.Assemble();
    if (convert->parsed()) return cmd.Convert();
    if (train->parsed()) return cmd.Train();
    if (eval->parsed()) return cmd.Eval();
    if (auc->parsed()) return cmd.Auc();
    if (stats->parsed()) return cmd.Stats();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
