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

#ifndef MNPP_TESTS_SUPPORT_PLANTED_H_
#define MNPP_TESTS_SUPPORT_PLANTED_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mnpp/baseline.h"
#include "mnpp/common.h"

namespace mnpp::testing {

// Standard normal draw (Box-Muller) from the library Rng.
double Gaussian(Rng& rng);

// Pairs whose gold option is picked by a hidden weight vector with a margin:
// planting_weights . (x_gold - x_other) >= margin for every pair.
struct PlantedData {
  std::vector<double> planting_weights;
  std::vector<FeaturizedPair> pairs;
};

PlantedData MakePlanted(size_t n, size_t dim, double margin, uint64_t seed);

// Accuracy of an arbitrary weight vector (argmax of w.x, ties to option a).
double AccuracyOf(std::span<const double> weights, std::span<const FeaturizedPair> pairs);

// Random pairs with uniform random labels.
std::vector<FeaturizedPair> RandomPairs(size_t n, size_t dim, uint64_t seed);

}  // namespace mnpp::testing

#endif  // MNPP_TESTS_SUPPORT_PLANTED_H_
