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

#ifndef MNPP_DATASET_ASSEMBLY_H_
#define MNPP_DATASET_ASSEMBLY_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mnpp/instance_gen.h"

namespace mnpp {

struct AssemblyConfig {
  std::optional<size_t> target_size;  // nullopt = keep everything
  uint64_t seed = 13;
  double dev_fraction = 0.05;
  bool dedup = true;
  std::optional<Bucket> bucket_filter;
  // Sources not listed weigh 1.0 when weights are given.
  std::map<std::string, double> source_weights;

  void Validate() const;
};

struct DatasetManifest {
  std::string name;
  std::string config_hash;
  std::map<std::string, uint64_t> per_source_counts;
  uint64_t total = 0;
  uint64_t train_count = 0;
  uint64_t dev_count = 0;
  double label_balance = 0.0;
  std::string tool_version;

  // Pretty-printed JSON with sorted keys and a trailing newline.
  std::string ToJson() const;
  static DatasetManifest FromJson(std::string_view text);
};

// Drops instances whose (sentence, mask_char_start, distractor_norm) key was
// already seen; the first occurrence wins.
std::vector<MnppInstance> Deduplicate(std::vector<MnppInstance> instances,
                                      size_t* removed = nullptr);

// Seeded sample without replacement, uniform or weighted by source. Output
// keeps input order. Throws "requested N of M" when the supply is short.
std::vector<MnppInstance> SampleToSize(std::vector<MnppInstance> instances,
                                       const AssemblyConfig& cfg);

struct TrainDevSplit {
  std::vector<MnppInstance> train;
  std::vector<MnppInstance> dev;
};

// Whole documents go to one side. Documents are visited in seeded order and
// moved to dev until it holds at least dev_fraction * n instances; the last
// remaining document always stays in train.
TrainDevSplit SplitTrainDev(std::vector<MnppInstance> instances, double dev_fraction,
                            uint64_t seed);

struct EmitOptions {
  std::string name;
  std::string config_hash;
};

// Writes train.jsonl, dev.jsonl and manifest.json into out_dir (created if
// missing). Manifest counts are taken from the records actually written.
DatasetManifest EmitDataset(const TrainDevSplit& split, const std::filesystem::path& out_dir,
                            const EmitOptions& options);

}  // namespace mnpp

#endif  // MNPP_DATASET_ASSEMBLY_H_
