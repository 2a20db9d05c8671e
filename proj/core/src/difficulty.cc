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

#include "mnpp/difficulty.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>

#include "mnpp/common.h"

namespace mnpp {

std::string_view BucketName(Bucket bucket) {
  switch (bucket) {
    case Bucket::kEasy: return "easy";
    case Bucket::kMedium: return "medium";
    case Bucket::kHard: return "hard";
  }
  return "medium";
}

std::optional<Bucket> ParseBucket(std::string_view name) {
  if (name == "easy") return Bucket::kEasy;
  if (name == "medium") return Bucket::kMedium;
  if (name == "hard") return Bucket::kHard;
  return std::nullopt;
}

void EmbeddingTable::Insert(std::string_view word, std::vector<double> vector) {
  if (vector.size() != dim_) throw Error("embedding dimension mismatch for " + std::string(word));
  auto [it, inserted] = entries_.insert_or_assign(ToLower(word), std::move(vector));
  if (!inserted) ++duplicates_;
}

const std::vector<double>* EmbeddingTable::Find(std::string_view lower_word) const {
  auto it = entries_.find(std::string(lower_word));
  return it == entries_.end() ? nullptr : &it->second;
}

EmbeddingTable EmbeddingTable::Scaled(double factor) const {
  EmbeddingTable out(dim_);
  for (const auto& [word, vec] : entries_) {
    std::vector<double> scaled(vec);
    for (double& x : scaled) x *= factor;
    out.entries_.emplace(word, std::move(scaled));
  }
  return out;
}

EmbeddingTable ParseEmbeddings(std::istream& in, const std::string& source_name) {
  std::optional<EmbeddingTable> table;
  std::string line;
  size_t line_no = 0;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    const size_t space = line.find(' ');
    const auto where = [&] { return source_name + ":" + std::to_string(line_no); };
    if (space == std::string::npos || space == 0) {
      throw Error("malformed embedding line at " + where());
    }
    values.clear();
    const char* p = line.data() + space;
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p == end) break;
      double x = 0.0;
      auto [next, ec] = std::from_chars(p, end, x);
      if (ec != std::errc() || (next < end && *next != ' ') || !std::isfinite(x)) {
        throw Error("bad number in embedding line at " + where());
      }
      values.push_back(x);
      p = next;
    }
    if (!table) {
      if (values.empty()) throw Error("embedding line without values at " + where());
      table.emplace(values.size());
    }
    if (values.size() != table->dim()) {
      throw Error("embedding dimension mismatch at " + where() + ": expected " +
                  std::to_string(table->dim()) + " values, found " +
                  std::to_string(values.size()));
    }
    table->Insert(std::string_view(line).substr(0, space), values);
  }
  if (!table) throw Error("embedding file is empty: " + source_name);
  return std::move(*table);
}

EmbeddingTable LoadEmbeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open embeddings " + path.string());
  return ParseEmbeddings(in, path.string());
}

std::optional<std::vector<double>> PhraseVector(std::string_view phrase_norm,
                                                const EmbeddingTable& table) {
  std::vector<double> sum(table.dim(), 0.0);
  size_t found = 0;
  size_t pos = 0;
  while (pos < phrase_norm.size()) {
    size_t end = phrase_norm.find(' ', pos);
    if (end == std::string_view::npos) end = phrase_norm.size();
    if (end > pos) {
      if (const auto* vec = table.Find(phrase_norm.substr(pos, end - pos))) {
        for (size_t d = 0; d < sum.size(); ++d) sum[d] += (*vec)[d];
        ++found;
      }
    }
    pos = end + 1;
  }
  if (found == 0) return std::nullopt;
  for (double& x : sum) x /= static_cast<double>(found);
  return sum;
}

double CosineSimilarity(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw Error("cosine of vectors with different dimensions");
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) throw Error("degenerate vector");
  return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), -1.0, 1.0);
}

ScoredInstance ScoreInstance(const MnppInstance& instance, const EmbeddingTable& table) {
  ScoredInstance scored{instance, std::nullopt, Bucket::kMedium};
  const auto gold = PhraseVector(instance.masked_norm, table);
  const auto other = PhraseVector(instance.distractor_norm, table);
  if (gold && other) {
    try {
      scored.similarity = CosineSimilarity(*gold, *other);
    } catch (const Error&) {
      scored.similarity.reset();
    }
  }
  return scored;
}

std::vector<ScoredInstance> ScoreInstances(std::span<const MnppInstance> instances,
                                           const EmbeddingTable& table, unsigned jobs) {
  std::vector<ScoredInstance> out(instances.size());
  ParallelFor(instances.size(), jobs,
              [&](size_t i) { out[i] = ScoreInstance(instances[i], table); });
  return out;
}

std::vector<ScoredInstance> Bucketize(std::vector<ScoredInstance> scored) {
  if (scored.empty()) throw Error("nothing to bucketize");
  std::vector<size_t> order;
  for (size_t i = 0; i < scored.size(); ++i) {
    scored[i].bucket = Bucket::kMedium;
    if (scored[i].similarity) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const double sa = *scored[a].similarity, sb = *scored[b].similarity;
    if (sa != sb) return sa > sb;
    return scored[a].instance.instance_id < scored[b].instance.instance_id;
  });
  const size_t n = order.size();
  const size_t hard = (n + 2) / 3;
  const size_t easy = (n + 1) / 3;
  for (size_t r = 0; r < n; ++r) {
    if (r < hard) {
      scored[order[r]].bucket = Bucket::kHard;
    } else if (r >= n - easy) {
      scored[order[r]].bucket = Bucket::kEasy;
    }
  }
  return scored;
}

std::vector<MnppInstance> Annotate(std::vector<ScoredInstance> scored) {
  std::vector<MnppInstance> out;
  out.reserve(scored.size());
  for (ScoredInstance& s : scored) {
    s.instance.difficulty = DifficultyAnnotation{s.similarity, s.bucket};
    out.push_back(std::move(s.instance));
  }
  return out;
}

}  // namespace mnpp
