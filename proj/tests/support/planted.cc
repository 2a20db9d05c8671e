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

#include "support/planted.h"

#include <cmath>
#include <numbers>

namespace mnpp::testing {

double Gaussian(Rng& rng) {
  const double u1 = rng.UnitOpen();
  const double u2 = rng.UnitOpen();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

FeatureVector RandomVector(Rng& rng, size_t dim) {
  FeatureVector v(dim);
  for (double& x : v) x = Gaussian(rng);
  return v;
}

}  // namespace

PlantedData MakePlanted(size_t n, size_t dim, double margin, uint64_t seed) {
  Rng rng(seed);
  PlantedData data;
  data.planting_weights = RandomVector(rng, dim);
  while (data.pairs.size() < n) {
    FeaturizedPair p{RandomVector(rng, dim), RandomVector(rng, dim), 0};
    const double s = Dot(data.planting_weights, p.a) - Dot(data.planting_weights, p.b);
    if (std::abs(s) < margin) continue;
    p.answer = s > 0 ? 0 : 1;
    data.pairs.push_back(std::move(p));
  }
  return data;
}

double AccuracyOf(std::span<const double> weights, std::span<const FeaturizedPair> pairs) {
  size_t correct = 0;
  for (const auto& p : pairs) {
    const int pred = Dot(weights, p.b) > Dot(weights, p.a) ? 1 : 0;
    correct += pred == p.answer;
  }
  return static_cast<double>(correct) / static_cast<double>(pairs.size());
}

std::vector<FeaturizedPair> RandomPairs(size_t n, size_t dim, uint64_t seed) {
  Rng rng(seed);
  std::vector<FeaturizedPair> out;
  for (size_t i = 0; i < n; ++i) {
    FeaturizedPair p{RandomVector(rng, dim), RandomVector(rng, dim), 0};
    p.answer = static_cast<int>(rng.Below(2));
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace mnpp::testing
