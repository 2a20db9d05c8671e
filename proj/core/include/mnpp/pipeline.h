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

#ifndef MNPP_PIPELINE_H_
#define MNPP_PIPELINE_H_

#include <cstdint>
#include <ostream>

#include "mnpp/config.h"
#include "mnpp/corpus_ingest.h"
#include "mnpp/dataset_assembly.h"

namespace mnpp {

struct ForgeStats {
  IngestReport ingest;
  uint64_t generated = 0;
  uint64_t duplicates_removed = 0;
  uint64_t sampled = 0;
  uint64_t missing_similarity = 0;  // forced to MEDIUM
  uint64_t bucket_filtered_out = 0;
};

struct ForgeResult {
  DatasetManifest manifest;
  ForgeStats stats;
};

// ingest -> analyze + generate -> dedup -> sample -> (bucket, filter) ->
// train/dev split -> emit into cfg.out_dir. Output bytes depend only on the
// config and seed, never on `jobs`. Progress counters go to `log` if given.
ForgeResult Forge(const RunConfig& cfg, unsigned jobs, std::ostream* log = nullptr);

}  // namespace mnpp

#endif  // MNPP_PIPELINE_H_
