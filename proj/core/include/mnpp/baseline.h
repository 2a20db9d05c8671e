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

// Linear binary-choice scorer over fixed embedding features.
//
// Each filled candidate gets a logit z = w . phi(prefix, option, suffix) + b
// and the two logits go through a two-way softmax. Training minimizes the
// mean cross-entropy of the gold option plus an L2 penalty with plain
// mini-batch gradient descent from an all-zero start.
//
// Feature layout for embedding dimension d (4d + 3 values):
//   [0, d)      mean vector of prefix tokens
//   [d, 2d)     mean vector of option tokens
//   [2d, 3d)    mean vector of suffix tokens
//   [3d, 4d)    option mean * prefix mean, elementwise
//   4d          cosine(option mean, prefix mean)
//   4d + 1      cosine(option mean, suffix mean)
//   4d + 2      log(1 + number of option tokens)
// A segment with no in-vocabulary token contributes a zero block and zero
// cosines.

#ifndef MNPP_BASELINE_H_
#define MNPP_BASELINE_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mnpp/difficulty.h"
#include "mnpp/downstream.h"

namespace mnpp {

inline constexpr int kFeatureSchemaVersion = 1;

using FeatureVector = std::vector<double>;

size_t FeatureDim(size_t embedding_dim);

FeatureVector Featurize(std::string_view prefix, std::string_view option,
                        std::string_view suffix, const EmbeddingTable& table);

struct TrainConfig {
  double learning_rate = 0.1;
  int epochs = 50;
  int batch_size = 32;
  uint64_t seed = 13;
  double l2 = 1e-4;

  void Validate() const;
};

struct BaselineModel {
  std::vector<double> weights;
  double bias = 0.0;
  TrainConfig train_config;

  static BaselineModel Zero(size_t feature_dim, TrainConfig cfg = {});

  double Logit(std::span<const double> features) const;

  std::string ToJson() const;
  static BaselineModel FromJson(std::string_view text);
};

struct PairScore {
  double z_a = 0.0;
  double z_b = 0.0;
  double p_a = 0.5;
};

// Two-way softmax of (z_a, z_b), computed after subtracting the larger logit.
PairScore Softmax2(double z_a, double z_b);

PairScore ScorePair(const BinaryChoiceExample& example, const BaselineModel& model,
                    const EmbeddingTable& table);

// Scorer view of a trained model, for Evaluate().
Scorer MakeModelScorer(const BaselineModel& model, const EmbeddingTable& table);

// Both options of one example, featurized once.
struct FeaturizedPair {
  FeatureVector a;
  FeatureVector b;
  int answer = 0;
};

std::vector<FeaturizedPair> FeaturizeAll(std::span<const BinaryChoiceExample> examples,
                                         const EmbeddingTable& table, unsigned jobs = 1);

// Mean of -log p_gold over the batch plus l2 * ||w||^2.
double BatchLoss(const BaselineModel& model, std::span<const FeaturizedPair> batch);

struct Gradient {
  std::vector<double> weights;
  double bias = 0.0;
};

Gradient BatchGradient(const BaselineModel& model, std::span<const FeaturizedPair> batch);

// d(-log p_gold)/dz for the gold and the other logit: (p_gold - 1, p_other).
std::pair<double, double> LogitGradient(double z_gold, double z_other);

// Compares BatchGradient against central differences on max(20, ...) seeded
// coordinates (the bias is always included) and returns the largest
// |analytic - numeric| / max(|analytic| + |numeric|, 1e-6).
double GradientCheck(const BaselineModel& model, std::span<const FeaturizedPair> batch,
                     double epsilon, uint64_t seed = 13, size_t coordinates = 20);

double Accuracy(const BaselineModel& model, std::span<const FeaturizedPair> data);

struct EpochLog {
  int epoch = 0;  // 0 is the initial model
  double loss = 0.0;
  double dev_accuracy = 0.0;
};

struct TrainResult {
  BaselineModel model;  // best dev accuracy, earliest epoch on ties
  int best_epoch = 0;
  std::vector<EpochLog> log;

  // CSV "epoch,loss,dev_accuracy".
  std::string LogCsv() const;
};

TrainResult Train(std::span<const BinaryChoiceExample> train,
                  std::span<const BinaryChoiceExample> dev, const EmbeddingTable& table,
                  const TrainConfig& cfg, unsigned jobs = 1);

TrainResult TrainFeaturized(std::span<const FeaturizedPair> train,
                            std::span<const FeaturizedPair> dev, size_t feature_dim,
                            const TrainConfig& cfg);

struct LearningCurvePoint {
  uint64_t train_size = 0;
  double accuracy = 0.0;
};

// Trapezoidal area under accuracy against
// x = (log10 size - log10 size_min) / (log10 size_max - log10 size_min).
double LearningCurveAuc(std::span<const LearningCurvePoint> points);

// CSV "size,accuracy" with a header line.
std::vector<LearningCurvePoint> ParseLearningCurveCsv(std::string_view text);

}  // namespace mnpp

#endif  // MNPP_BASELINE_H_
