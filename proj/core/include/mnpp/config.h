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

// Run configuration: one INI document.
//
//   [run]            name, seed, out
//   [corpus.<tag>]   path            (one section per source tag)
//   [cleaning]       min_tokens, max_tokens, max_special_fraction
//   [generation]     max_per_sentence
//   [difficulty]     embeddings
//   [assembly]       target_size (integer or "all"), dev_fraction, dedup,
//                    bucket_filter (easy|medium|hard), source_weights
//                    ("tag:weight,tag:weight")
//   [training]       embeddings, learning_rate, epochs, batch_size, l2
//
// Relative paths resolve against the directory holding the config file.
// Unknown sections and keys are errors.

#ifndef MNPP_CONFIG_H_
#define MNPP_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mnpp/baseline.h"
#include "mnpp/corpus_ingest.h"
#include "mnpp/dataset_assembly.h"
#include "mnpp/instance_gen.h"

namespace mnpp {

struct RunConfig {
  std::string name = "mnpp";
  uint64_t seed = 13;
  std::filesystem::path out_dir = "out";
  std::vector<CorpusSpec> corpora;  // sorted by source tag
  CleaningConfig cleaning;
  GenConfig generation;
  std::optional<std::filesystem::path> embeddings;
  AssemblyConfig assembly;
  std::optional<std::filesystem::path> training_embeddings;
  TrainConfig training;

  // Canonical form: "section.key=value" lines sorted, values as written
  // except where overridden (seed, out).
  std::map<std::string, std::string> canonical;

  // SHA-256 of the canonical form.
  std::string ConfigHash() const;

  void SetSeed(uint64_t seed);
  void SetOutDir(const std::filesystem::path& out);

  // Checks value ranges and that every referenced path exists.
  void Validate() const;
};

RunConfig ParseRunConfig(std::string_view text, const std::filesystem::path& base_dir);
RunConfig LoadRunConfig(const std::filesystem::path& path);

}  // namespace mnpp

#endif  // MNPP_CONFIG_H_
