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

#include "mnpp/config.h"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "mnpp/common.h"
#include "mnpp/difficulty.h"
#include "mnpp/records.h"

namespace mnpp {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

template <typename T>
T ParseNumber(const std::string& key, const std::string& value) {
  T out{};
  const char* begin = value.data();
  const char* end = begin + value.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end) {
    throw Error("config: " + key + " has invalid value \"" + value + "\"");
  }
  return out;
}

bool ParseBool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  throw Error("config: " + key + " must be true or false");
}

fs::path Resolve(const fs::path& base, const std::string& value) {
  const fs::path p(value);
  return p.is_absolute() ? p : (base / p).lexically_normal();
}

const std::map<std::string, std::set<std::string>>& KnownKeys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"run", {"name", "seed", "out"}},
      {"cleaning", {"min_tokens", "max_tokens", "max_special_fraction"}},
      {"generation", {"max_per_sentence"}},
      {"difficulty", {"embeddings"}},
      {"assembly",
       {"target_size", "dev_fraction", "dedup", "bucket_filter", "source_weights"}},
      {"training", {"embeddings", "learning_rate", "epochs", "batch_size", "l2"}},
  };
  return keys;
}

std::map<std::string, double> ParseWeights(const std::string& value) {
  std::map<std::string, double> weights;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string entry(Trim(item));
    if (entry.empty()) continue;
    const size_t colon = entry.find(':');
    if (colon == std::string::npos || colon == 0) {
      throw Error("config: assembly.source_weights entries must look like tag:weight");
    }
    const std::string tag(Trim(entry.substr(0, colon)));
    weights[tag] = ParseNumber<double>("assembly.source_weights",
                                       std::string(Trim(entry.substr(colon + 1))));
  }
  return weights;
}

}  // namespace

std::string RunConfig::ConfigHash() const {
  std::string doc;
  for (const auto& [key, value] : canonical) {
    doc += key;
    doc += '=';
    doc += value;
    doc += '\n';
  }
  return Sha256Hex(doc);
}

void RunConfig::SetSeed(uint64_t new_seed) {
  seed = new_seed;
  assembly.seed = new_seed;
  training.seed = new_seed;
  canonical["run.seed"] = std::to_string(new_seed);
}

void RunConfig::SetOutDir(const fs::path& out) { out_dir = out; }

void RunConfig::Validate() const {
  cleaning.Validate();
  generation.Validate();
  assembly.Validate();
  training.Validate();
  for (const auto& corpus : corpora) {
    if (!fs::is_directory(corpus.root)) {
      throw Error("config: corpus." + corpus.source_tag + ".path does not exist: " +
                  corpus.root.string());
    }
  }
  if (embeddings && !fs::exists(*embeddings)) {
    throw Error("config: difficulty.embeddings does not exist: " + embeddings->string());
  }
  if (training_embeddings && !fs::exists(*training_embeddings)) {
    throw Error("config: training.embeddings does not exist: " + training_embeddings->string());
  }
  if (assembly.bucket_filter && !embeddings) {
    throw Error("config: assembly.bucket_filter requires difficulty.embeddings");
  }
}

RunConfig ParseRunConfig(std::string_view text, const fs::path& base_dir) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(std::string("config: ") + e.message() + " at line " + std::to_string(e.line()));
  }

  RunConfig cfg;
  for (const auto& [section, body] : tree) {
    if (!body.data().empty() && body.empty()) {
      throw Error("config: key \"" + section + "\" is outside any section");
    }
    const bool is_corpus = section.rfind("corpus.", 0) == 0;
    const auto known = KnownKeys().find(section);
    if (!is_corpus && known == KnownKeys().end()) {
      throw Error("config: unknown section [" + section + "]");
    }
    for (const auto& [key, node] : body) {
      const std::string value(Trim(node.data()));
      const std::string full = section + "." + key;
      if (is_corpus ? key != "path" : known->second.count(key) == 0) {
        throw Error("config: unknown key " + full);
      }
      if (full != "run.out") cfg.canonical[full] = value;

      if (is_corpus) {
        const std::string tag = section.substr(7);
        if (tag.empty()) throw Error("config: corpus section needs a source tag");
        cfg.corpora.push_back({tag, Resolve(base_dir, value)});
      } else if (full == "run.name") {
        cfg.name = value;
      } else if (full == "run.seed") {
        cfg.seed = ParseNumber<uint64_t>(full, value);
        cfg.assembly.seed = cfg.seed;
      } else if (full == "run.out") {
        cfg.out_dir = Resolve(base_dir, value);
      } else if (full == "cleaning.min_tokens") {
        cfg.cleaning.min_tokens = ParseNumber<size_t>(full, value);
      } else if (full == "cleaning.max_tokens") {
        cfg.cleaning.max_tokens = ParseNumber<size_t>(full, value);
      } else if (full == "cleaning.max_special_fraction") {
        cfg.cleaning.max_special_fraction = ParseNumber<double>(full, value);
      } else if (full == "generation.max_per_sentence") {
        cfg.generation.max_per_sentence = ParseNumber<size_t>(full, value);
      } else if (full == "difficulty.embeddings") {
        cfg.embeddings = Resolve(base_dir, value);
      } else if (full == "assembly.target_size") {
        if (value == "all" || value == "ALL") {
          cfg.assembly.target_size.reset();
        } else {
          cfg.assembly.target_size = ParseNumber<size_t>(full, value);
        }
      } else if (full == "assembly.dev_fraction") {
        cfg.assembly.dev_fraction = ParseNumber<double>(full, value);
      } else if (full == "assembly.dedup") {
        cfg.assembly.dedup = ParseBool(full, value);
      } else if (full == "assembly.bucket_filter") {
        const auto bucket = ParseBucket(value);
        if (!bucket) throw Error("config: assembly.bucket_filter must be easy, medium or hard");
        cfg.assembly.bucket_filter = bucket;
      } else if (full == "assembly.source_weights") {
        cfg.assembly.source_weights = ParseWeights(value);
      } else if (full == "training.embeddings") {
        cfg.training_embeddings = Resolve(base_dir, value);
      } else if (full == "training.learning_rate") {
        cfg.training.learning_rate = ParseNumber<double>(full, value);
      } else if (full == "training.epochs") {
        cfg.training.epochs = ParseNumber<int>(full, value);
      } else if (full == "training.batch_size") {
        cfg.training.batch_size = ParseNumber<int>(full, value);
      } else if (full == "training.l2") {
        cfg.training.l2 = ParseNumber<double>(full, value);
      }
    }
  }
  cfg.training.seed = cfg.seed;
  std::sort(cfg.corpora.begin(), cfg.corpora.end(),
            [](const CorpusSpec& a, const CorpusSpec& b) { return a.source_tag < b.source_tag; });
  return cfg;
}

RunConfig LoadRunConfig(const fs::path& path) {
  const std::string text = ReadFile(path);
  return ParseRunConfig(text, path.parent_path().empty() ? fs::path(".") : path.parent_path());
}

}  // namespace mnpp
