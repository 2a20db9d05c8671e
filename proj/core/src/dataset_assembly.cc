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

#include "mnpp/dataset_assembly.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "mnpp/common.h"
#include "mnpp/records.h"

namespace mnpp {

using nlohmann::json;

void AssemblyConfig::Validate() const {
  if (target_size && *target_size == 0) throw Error("assembly.target_size must be positive");
  if (!(dev_fraction > 0.0 && dev_fraction <= 0.5)) {
    throw Error("assembly.dev_fraction must be in (0, 0.5]");
  }
  if (!source_weights.empty()) {
    for (const auto& [tag, w] : source_weights) {
      if (!std::isfinite(w) || w < 0.0) {
        throw Error("assembly.source_weights: weight for " + tag + " must be finite and >= 0");
      }
    }
  }
}

std::string DatasetManifest::ToJson() const {
  json j = {
      {"name", name},
      {"config_hash", config_hash},
      {"per_source_counts", per_source_counts},
      {"total", total},
      {"train_count", train_count},
      {"dev_count", dev_count},
      {"label_balance", label_balance},
      {"tool_version", tool_version},
  };
  return j.dump(2) + "\n";
}

DatasetManifest DatasetManifest::FromJson(std::string_view text) {
  try {
    const json j = json::parse(text);
    DatasetManifest m;
    m.name = j.at("name").get<std::string>();
    m.config_hash = j.at("config_hash").get<std::string>();
    m.per_source_counts = j.at("per_source_counts").get<std::map<std::string, uint64_t>>();
    m.total = j.at("total").get<uint64_t>();
    m.train_count = j.at("train_count").get<uint64_t>();
    m.dev_count = j.at("dev_count").get<uint64_t>();
    m.label_balance = j.at("label_balance").get<double>();
    m.tool_version = j.at("tool_version").get<std::string>();
    return m;
  } catch (const json::exception& e) {
    throw Error(std::string("invalid manifest: ") + e.what());
  }
}

std::vector<MnppInstance> Deduplicate(std::vector<MnppInstance> instances, size_t* removed) {
  std::set<std::tuple<std::string_view, size_t, std::string_view>> seen;
  std::vector<MnppInstance> out;
  out.reserve(instances.size());
  std::vector<bool> keep(instances.size(), false);
  for (size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    keep[i] = seen.emplace(inst.sentence, inst.mask_char_start, inst.distractor_norm).second;
  }
  for (size_t i = 0; i < instances.size(); ++i) {
    if (keep[i]) out.push_back(std::move(instances[i]));
  }
  if (removed) *removed = instances.size() - out.size();
  return out;
}

std::vector<MnppInstance> SampleToSize(std::vector<MnppInstance> instances,
                                       const AssemblyConfig& cfg) {
  cfg.Validate();
  if (!cfg.target_size) return instances;
  const size_t k = *cfg.target_size;
  Rng rng(DeriveSeed(cfg.seed, "sampling"));

  std::vector<size_t> chosen;
  if (cfg.source_weights.empty()) {
    if (k > instances.size()) {
      throw Error("requested " + std::to_string(k) + " of " + std::to_string(instances.size()));
    }
    std::vector<size_t> idx(instances.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + rng.Below(idx.size() - i)]);
    chosen.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
  } else {
    // Weighted sampling without replacement: keep the k largest log(u) / w.
    std::vector<std::pair<double, size_t>> keys;
    for (size_t i = 0; i < instances.size(); ++i) {
      const double u = rng.UnitOpen();
      auto it = cfg.source_weights.find(instances[i].source_tag);
      const double w = it == cfg.source_weights.end() ? 1.0 : it->second;
      if (w > 0.0) keys.emplace_back(std::log(u) / w, i);
    }
    if (k > keys.size()) {
      throw Error("requested " + std::to_string(k) + " of " + std::to_string(keys.size()));
    }
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    for (size_t i = 0; i < k; ++i) chosen.push_back(keys[i].second);
  }
  std::sort(chosen.begin(), chosen.end());
  std::vector<MnppInstance> out;
  out.reserve(k);
  for (size_t i : chosen) out.push_back(std::move(instances[i]));
  return out;
}

TrainDevSplit SplitTrainDev(std::vector<MnppInstance> instances, double dev_fraction,
                            uint64_t seed) {
  if (!(dev_fraction > 0.0 && dev_fraction <= 0.5)) {
    throw Error("dev_fraction must be in (0, 0.5]");
  }
  std::vector<std::string> docs;
  std::unordered_map<std::string, size_t> group_size;
  for (const auto& inst : instances) {
    if (group_size[inst.doc_id]++ == 0) docs.push_back(inst.doc_id);
  }
  if (docs.size() < 2) {
    throw Error("train/dev split needs at least 2 documents, found " +
                std::to_string(docs.size()));
  }
  std::sort(docs.begin(), docs.end());
  Rng rng(DeriveSeed(seed, "split"));
  rng.Shuffle(docs);

  const double target = dev_fraction * static_cast<double>(instances.size());
  std::set<std::string> dev_docs;
  size_t dev_count = 0;
  for (size_t d = 0; d + 1 < docs.size() && static_cast<double>(dev_count) < target; ++d) {
    dev_docs.insert(docs[d]);
    dev_count += group_size[docs[d]];
  }

  TrainDevSplit split;
  for (auto& inst : instances) {
    (dev_docs.count(inst.doc_id) ? split.dev : split.train).push_back(std::move(inst));
  }
  return split;
}

DatasetManifest EmitDataset(const TrainDevSplit& split, const std::filesystem::path& out_dir,
                            const EmitOptions& options) {
  if (split.train.empty() && split.dev.empty()) throw Error("nothing to emit");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create " + out_dir.string() + ": " + ec.message());

  DatasetManifest manifest;
  manifest.name = options.name;
  manifest.config_hash = options.config_hash;
  manifest.tool_version = std::string(kToolVersion);
  uint64_t zeros = 0;
  auto write = [&](const std::vector<MnppInstance>& part, const char* file) {
    std::string buf;
    uint64_t written = 0;
    for (const auto& inst : part) {
      buf += ToJsonLine(inst);
      buf += '\n';
      manifest.per_source_counts[inst.source_tag]++;
      zeros += inst.label == 0;
      ++written;
    }
    WriteFile(out_dir / file, buf);
    return written;
  };
  manifest.train_count = write(split.train, "train.jsonl");
  manifest.dev_count = write(split.dev, "dev.jsonl");
  manifest.total = manifest.train_count + manifest.dev_count;
  manifest.label_balance = static_cast<double>(zeros) / static_cast<double>(manifest.total);
  WriteFile(out_dir / "manifest.json", manifest.ToJson());
  return manifest;
}

}  // namespace mnpp
