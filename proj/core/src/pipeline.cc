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

#include "mnpp/pipeline.h"

#include "mnpp/common.h"
#include "mnpp/difficulty.h"
#include "mnpp/instance_gen.h"

namespace mnpp {

ForgeResult Forge(const RunConfig& cfg, unsigned jobs, std::ostream* log) {
  cfg.Validate();
  if (cfg.corpora.empty()) throw Error("config: no [corpus.<tag>] sections");
  ForgeResult result;
  ForgeStats& stats = result.stats;

  const auto sentences = IngestCorpora(cfg.corpora, cfg.cleaning, jobs, &stats.ingest);
  if (log) {
    for (const auto& w : stats.ingest.warnings) *log << "warning: " << w << "\n";
    *log << "ingest: documents=" << stats.ingest.documents
         << " sentences_seen=" << stats.ingest.sentences_seen
         << " kept=" << stats.ingest.sentences_kept
         << " dropped_short=" << stats.ingest.sentences_dropped_short
         << " dropped_long=" << stats.ingest.sentences_dropped_long
         << " dropped_charset=" << stats.ingest.sentences_dropped_charset << "\n";
  }

  auto instances = GenerateAll(sentences, cfg.generation, DeriveSeed(cfg.seed, "labels"), jobs);
  stats.generated = instances.size();
  if (cfg.assembly.dedup) {
    size_t removed = 0;
    instances = Deduplicate(std::move(instances), &removed);
    stats.duplicates_removed = removed;
  }
  instances = SampleToSize(std::move(instances), cfg.assembly);
  stats.sampled = instances.size();
  if (log) {
    *log << "generate: instances=" << stats.generated
         << " duplicates_removed=" << stats.duplicates_removed
         << " sampled=" << stats.sampled << "\n";
  }

  if (cfg.embeddings) {
    if (instances.empty()) throw Error("nothing to emit");
    const EmbeddingTable table = LoadEmbeddings(*cfg.embeddings);
    auto scored = Bucketize(ScoreInstances(instances, table, jobs));
    std::vector<MnppInstance> kept;
    for (auto& inst : Annotate(std::move(scored))) {
      if (!inst.difficulty->similarity) stats.missing_similarity++;
      if (cfg.assembly.bucket_filter && inst.difficulty->bucket != *cfg.assembly.bucket_filter) {
        stats.bucket_filtered_out++;
        continue;
      }
      kept.push_back(std::move(inst));
    }
    instances = std::move(kept);
    if (log) {
      *log << "difficulty: missing_similarity=" << stats.missing_similarity
           << " filtered_out=" << stats.bucket_filtered_out << "\n";
    }
  }

  if (instances.empty()) throw Error("nothing to emit");
  auto split = SplitTrainDev(std::move(instances), cfg.assembly.dev_fraction, cfg.seed);
  result.manifest = EmitDataset(split, cfg.out_dir, {cfg.name, cfg.ConfigHash()});
  return result;
}

}  // namespace mnpp
