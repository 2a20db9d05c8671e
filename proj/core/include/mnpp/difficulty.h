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

#ifndef MNPP_DIFFICULTY_H_
#define MNPP_DIFFICULTY_H_

#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mnpp/instance_gen.h"

namespace mnpp {

std::string_view BucketName(Bucket bucket);  // "easy" | "medium" | "hard"
std::optional<Bucket> ParseBucket(std::string_view name);

// Word vectors keyed by lowercased word.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(size_t dim) : dim_(dim) {}

  size_t dim() const { return dim_; }
  size_t size() const { return entries_.size(); }
  // Number of entries that replaced an earlier line for the same word.
  size_t duplicates() const { return duplicates_; }

  // Lowercases `word`; a later insert for the same word wins.
  void Insert(std::string_view word, std::vector<double> vector);
  const std::vector<double>* Find(std::string_view lower_word) const;

  // Copy with every vector multiplied by `factor`.
  EmbeddingTable Scaled(double factor) const;

 private:
  size_t dim_;
  size_t duplicates_ = 0;
  std::unordered_map<std::string, std::vector<double>> entries_;
};

// Text format: "word v1 v2 ... vd" per line; d is fixed by the first line.
EmbeddingTable ParseEmbeddings(std::istream& in, const std::string& source_name);
EmbeddingTable LoadEmbeddings(const std::filesystem::path& path);

// Mean of the in-vocabulary token vectors of a space-joined lowercase phrase;
// nullopt when no token is in vocabulary.
std::optional<std::vector<double>> PhraseVector(std::string_view phrase_norm,
                                                const EmbeddingTable& table);

// Clamped to [-1, 1]. Throws "degenerate vector" on a zero-norm input and on
// dimension mismatch.
double CosineSimilarity(std::span<const double> u, std::span<const double> v);

struct ScoredInstance {
  MnppInstance instance;
  std::optional<double> similarity;  // nullopt = MISSING
  Bucket bucket = Bucket::kMedium;
};

// Similarity of the masked and distractor phrase vectors. MISSING when either
// phrase has no in-vocabulary token or a zero vector.
ScoredInstance ScoreInstance(const MnppInstance& instance, const EmbeddingTable& table);

std::vector<ScoredInstance> ScoreInstances(std::span<const MnppInstance> instances,
                                           const EmbeddingTable& table, unsigned jobs);

// Ranks scored instances by similarity descending, ties by instance_id. With
// n ranked instances, the top ceil(n/3) are HARD, the bottom
// floor((n + 1) / 3) EASY and the rest MEDIUM, so bucket sizes differ by at
// most one and a lone instance is HARD. MISSING instances are MEDIUM and do
// not count towards n. Input order is preserved. Throws on empty input.
std::vector<ScoredInstance> Bucketize(std::vector<ScoredInstance> scored);

// Writes similarity/bucket into each instance's difficulty annotation.
std::vector<MnppInstance> Annotate(std::vector<ScoredInstance> scored);

}  // namespace mnpp

#endif  // MNPP_DIFFICULTY_H_
