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

#include "mnpp/baseline.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "mnpp/common.h"
#include "mnpp/text_analysis.h"

namespace mnpp {

using nlohmann::json;

namespace {

struct SegmentMean {
  std::vector<double> mean;
  bool found = false;
  size_t tokens = 0;
};

SegmentMean MeanOf(std::string_view text, const EmbeddingTable& table) {
  SegmentMean seg;
  seg.mean.assign(table.dim(), 0.0);
  size_t hits = 0;
  for (const Token& tok : Tokenize(text)) {
    ++seg.tokens;
    const auto* vec = table.Find(tok.lower);
    if (!vec) continue;
    for (size_t d = 0; d < vec->size(); ++d) seg.mean[d] += (*vec)[d];
    ++hits;
  }
  if (hits > 0) {
    for (double& x : seg.mean) x /= static_cast<double>(hits);
    seg.found = true;
  }
  return seg;
}

double SafeCosine(const SegmentMean& u, const SegmentMean& v) {
  if (!u.found || !v.found) return 0.0;
  try {
    return CosineSimilarity(u.mean, v.mean);
  } catch (const Error&) {
    return 0.0;
  }
}

double Dot(std::span<const double> w, std::span<const double> x) {
  double sum = 0.0;
  for (size_t i = 0; i < w.size(); ++i) sum += w[i] * x[i];
  return sum;
}

// -log p_gold without forming p_gold.
double PairLoss(double z_gold, double z_other) {
  const double m = std::max(z_gold, z_other);
  return -(z_gold - m) + std::log(std::exp(z_gold - m) + std::exp(z_other - m));
}

double L2Term(const BaselineModel& model) {
  return model.train_config.l2 * Dot(model.weights, model.weights);
}

double LossOver(const BaselineModel& model, std::span<const FeaturizedPair> data,
                std::span<const size_t> indices) {
  double sum = 0.0;
  for (size_t i : indices) {
    const auto& p = data[i];
    const double za = model.Logit(p.a), zb = model.Logit(p.b);
    sum += p.answer == 0 ? PairLoss(za, zb) : PairLoss(zb, za);
  }
  return sum / static_cast<double>(indices.size()) + L2Term(model);
}

Gradient GradientOver(const BaselineModel& model, std::span<const FeaturizedPair> data,
                      std::span<const size_t> indices) {
  Gradient g;
  g.weights.assign(model.weights.size(), 0.0);
  for (size_t i : indices) {
    const auto& p = data[i];
    const PairScore s = Softmax2(model.Logit(p.a), model.Logit(p.b));
    const double ga = s.p_a - (p.answer == 0 ? 1.0 : 0.0);
    const double gb = (1.0 - s.p_a) - (p.answer == 1 ? 1.0 : 0.0);
    for (size_t d = 0; d < g.weights.size(); ++d) g.weights[d] += ga * p.a[d] + gb * p.b[d];
    g.bias += ga + gb;
  }
  const double inv = 1.0 / static_cast<double>(indices.size());
  for (size_t d = 0; d < g.weights.size(); ++d) {
    g.weights[d] = g.weights[d] * inv + 2.0 * model.train_config.l2 * model.weights[d];
  }
  g.bias *= inv;
  return g;
}

std::vector<size_t> Iota(size_t n) {
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), size_t{0});
  return idx;
}

}  // namespace

size_t FeatureDim(size_t embedding_dim) { return 4 * embedding_dim + 3; }

FeatureVector Featurize(std::string_view prefix, std::string_view option,
                        std::string_view suffix, const EmbeddingTable& table) {
  const size_t d = table.dim();
  const SegmentMean pre = MeanOf(prefix, table);
  const SegmentMean opt = MeanOf(option, table);
  const SegmentMean suf = MeanOf(suffix, table);
  FeatureVector f(FeatureDim(d), 0.0);
  for (size_t i = 0; i < d; ++i) {
    f[i] = pre.mean[i];
    f[d + i] = opt.mean[i];
    f[2 * d + i] = suf.mean[i];
    f[3 * d + i] = opt.mean[i] * pre.mean[i];
  }
  f[4 * d] = SafeCosine(opt, pre);
  f[4 * d + 1] = SafeCosine(opt, suf);
  f[4 * d + 2] = std::log1p(static_cast<double>(opt.tokens));
  return f;
}

void TrainConfig::Validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw Error("training.learning_rate must be positive and finite");
  }
  if (epochs < 0) throw Error("training.epochs must be >= 0");
  if (batch_size < 1) throw Error("training.batch_size must be >= 1");
  if (!(l2 >= 0.0) || !std::isfinite(l2)) throw Error("training.l2 must be >= 0");
}

BaselineModel BaselineModel::Zero(size_t feature_dim, TrainConfig cfg) {
  BaselineModel m;
  m.weights.assign(feature_dim, 0.0);
  m.train_config = cfg;
  return m;
}

double BaselineModel::Logit(std::span<const double> features) const {
  if (features.size() != weights.size()) {
    throw Error("feature dimension " + std::to_string(features.size()) +
                " does not match model dimension " + std::to_string(weights.size()));
  }
  return Dot(weights, features) + bias;
}

std::string BaselineModel::ToJson() const {
  json j = {
      {"dim", weights.size()},
      {"weights", weights},
      {"bias", bias},
      {"feature_schema_version", kFeatureSchemaVersion},
      {"train_config",
       {{"learning_rate", train_config.learning_rate},
        {"epochs", train_config.epochs},
        {"batch_size", train_config.batch_size},
        {"seed", train_config.seed},
        {"l2", train_config.l2}}},
  };
  return j.dump() + "\n";
}

BaselineModel BaselineModel::FromJson(std::string_view text) {
  try {
    const json j = json::parse(text);
    if (j.at("feature_schema_version").get<int>() != kFeatureSchemaVersion) {
      throw Error("unsupported feature_schema_version");
    }
    BaselineModel m;
    m.weights = j.at("weights").get<std::vector<double>>();
    if (m.weights.size() != j.at("dim").get<size_t>()) {
      throw Error("model dim does not match number of weights");
    }
    m.bias = j.at("bias").get<double>();
    const json& tc = j.at("train_config");
    m.train_config.learning_rate = tc.at("learning_rate").get<double>();
    m.train_config.epochs = tc.at("epochs").get<int>();
    m.train_config.batch_size = tc.at("batch_size").get<int>();
    m.train_config.seed = tc.at("seed").get<uint64_t>();
    m.train_config.l2 = tc.at("l2").get<double>();
    for (double w : m.weights) {
      if (!std::isfinite(w)) throw Error("model has non-finite weights");
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(std::string("invalid model file: ") + e.what());
  }
}

PairScore Softmax2(double z_a, double z_b) {
  const double m = std::max(z_a, z_b);
  const double ea = std::exp(z_a - m);
  const double eb = std::exp(z_b - m);
  return PairScore{z_a, z_b, ea / (ea + eb)};
}

PairScore ScorePair(const BinaryChoiceExample& ex, const BaselineModel& model,
                    const EmbeddingTable& table) {
  const double za = model.Logit(Featurize(ex.prefix, ex.option_a, ex.suffix, table));
  const double zb = model.Logit(Featurize(ex.prefix, ex.option_b, ex.suffix, table));
  return Softmax2(za, zb);
}

Scorer MakeModelScorer(const BaselineModel& model, const EmbeddingTable& table) {
  return [&model, &table](std::string_view prefix, std::string_view option,
                          std::string_view suffix) {
    return model.Logit(Featurize(prefix, option, suffix, table));
  };
}

std::vector<FeaturizedPair> FeaturizeAll(std::span<const BinaryChoiceExample> examples,
                                         const EmbeddingTable& table, unsigned jobs) {
  for (const auto& ex : examples) {
    if (!ex.answer) throw Error("unlabeled example " + ex.example_id + " in training data");
  }
  std::vector<FeaturizedPair> out(examples.size());
  ParallelFor(examples.size(), jobs, [&](size_t i) {
    const auto& ex = examples[i];
    out[i].a = Featurize(ex.prefix, ex.option_a, ex.suffix, table);
    out[i].b = Featurize(ex.prefix, ex.option_b, ex.suffix, table);
    out[i].answer = *ex.answer;
  });
  return out;
}

double BatchLoss(const BaselineModel& model, std::span<const FeaturizedPair> batch) {
  if (batch.empty()) throw Error("empty batch");
  const auto idx = Iota(batch.size());
  return LossOver(model, batch, idx);
}

Gradient BatchGradient(const BaselineModel& model, std::span<const FeaturizedPair> batch) {
  if (batch.empty()) throw Error("empty batch");
  const auto idx = Iota(batch.size());
  return GradientOver(model, batch, idx);
}

std::pair<double, double> LogitGradient(double z_gold, double z_other) {
  const PairScore s = Softmax2(z_gold, z_other);
  return {s.p_a - 1.0, 1.0 - s.p_a};
}

double GradientCheck(const BaselineModel& model, std::span<const FeaturizedPair> batch,
                     double epsilon, uint64_t seed, size_t coordinates) {
  if (!(epsilon >= 1e-7 && epsilon <= 1e-3)) throw Error("epsilon must be in [1e-7, 1e-3]");
  const Gradient analytic = BatchGradient(model, batch);
  const size_t dim = model.weights.size();

  std::vector<size_t> coords = Iota(dim);
  Rng rng(DeriveSeed(seed, "gradient_check"));
  rng.Shuffle(coords);
  coords.resize(std::min(dim, std::max<size_t>(coordinates, 20)));

  // Near-zero gradients are compared on an absolute scale of 1e-6.
  auto rel = [](double a, double n) { return std::abs(a - n) / std::max(std::abs(a) + std::abs(n), 1e-6); };

  BaselineModel probe = model;
  double worst = 0.0;
  for (size_t c : coords) {
    const double saved = probe.weights[c];
    probe.weights[c] = saved + epsilon;
    const double up = BatchLoss(probe, batch);
    probe.weights[c] = saved - epsilon;
    const double down = BatchLoss(probe, batch);
    probe.weights[c] = saved;
    worst = std::max(worst, rel(analytic.weights[c], (up - down) / (2.0 * epsilon)));
  }
  probe.bias = model.bias + epsilon;
  const double up = BatchLoss(probe, batch);
  probe.bias = model.bias - epsilon;
  const double down = BatchLoss(probe, batch);
  worst = std::max(worst, rel(analytic.bias, (up - down) / (2.0 * epsilon)));
  return worst;
}

double Accuracy(const BaselineModel& model, std::span<const FeaturizedPair> data) {
  if (data.empty()) return 0.0;
  size_t correct = 0;
  for (const auto& p : data) {
    const int predicted = model.Logit(p.b) > model.Logit(p.a) ? 1 : 0;
    correct += predicted == p.answer;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

std::string TrainResult::LogCsv() const {
  std::string out = "epoch,loss,dev_accuracy\n";
  for (const EpochLog& e : log) {
    out += std::to_string(e.epoch) + "," + FormatDouble(e.loss) + "," +
           FormatDouble(e.dev_accuracy) + "\n";
  }
  return out;
}

TrainResult TrainFeaturized(std::span<const FeaturizedPair> train,
                            std::span<const FeaturizedPair> dev, size_t feature_dim,
                            const TrainConfig& cfg) {
  cfg.Validate();
  if (train.empty() || dev.empty()) throw Error("training needs non-empty train and dev sets");

  TrainResult result;
  BaselineModel model = BaselineModel::Zero(feature_dim, cfg);
  const auto all = Iota(train.size());
  result.log.push_back({0, LossOver(model, train, all), Accuracy(model, dev)});
  result.model = model;
  double best = result.log.back().dev_accuracy;

  Rng rng(DeriveSeed(cfg.seed, "shuffle"));
  std::vector<size_t> order = all;
  const size_t batch = static_cast<size_t>(cfg.batch_size);
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    rng.Shuffle(order);
    for (size_t start = 0; start < order.size(); start += batch) {
      const size_t end = std::min(order.size(), start + batch);
      const Gradient g =
          GradientOver(model, train, std::span<const size_t>(order).subspan(start, end - start));
      for (size_t d = 0; d < feature_dim; ++d) model.weights[d] -= cfg.learning_rate * g.weights[d];
      model.bias -= cfg.learning_rate * g.bias;
    }
    const double loss = LossOver(model, train, all);
    if (!std::isfinite(loss)) {
      throw Error("non-finite training loss at epoch " + std::to_string(epoch) +
                  "; learning_rate=" + FormatDouble(cfg.learning_rate) + " is too large");
    }
    const double acc = Accuracy(model, dev);
    result.log.push_back({epoch, loss, acc});
    if (acc > best) {
      best = acc;
      result.model = model;
      result.best_epoch = epoch;
    }
  }
  return result;
}

TrainResult Train(std::span<const BinaryChoiceExample> train,
                  std::span<const BinaryChoiceExample> dev, const EmbeddingTable& table,
                  const TrainConfig& cfg, unsigned jobs) {
  const auto train_features = FeaturizeAll(train, table, jobs);
  const auto dev_features = FeaturizeAll(dev, table, jobs);
  return TrainFeaturized(train_features, dev_features, FeatureDim(table.dim()), cfg);
}

double LearningCurveAuc(std::span<const LearningCurvePoint> points) {
  if (points.size() < 2) throw Error("learning curve needs at least 2 points");
  for (size_t i = 0; i < points.size(); ++i) {
    if (points[i].train_size == 0) throw Error("learning curve sizes must be positive");
    if (!(points[i].accuracy >= 0.0 && points[i].accuracy <= 1.0)) {
      throw Error("learning curve accuracies must be in [0, 1]");
    }
    if (i > 0 && points[i].train_size <= points[i - 1].train_size) {
      throw Error("learning curve sizes must be strictly increasing");
    }
  }
  const double lo = std::log10(static_cast<double>(points.front().train_size));
  const double hi = std::log10(static_cast<double>(points.back().train_size));
  double area = 0.0;
  double prev_x = 0.0;
  for (size_t i = 1; i < points.size(); ++i) {
    const double x = i + 1 == points.size()
                         ? 1.0
                         : (std::log10(static_cast<double>(points[i].train_size)) - lo) / (hi - lo);
    area += (x - prev_x) * (points[i - 1].accuracy + points[i].accuracy) / 2.0;
    prev_x = x;
  }
  return area;
}

std::vector<LearningCurvePoint> ParseLearningCurveCsv(std::string_view text) {
  std::vector<LearningCurvePoint> points;
  size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = Trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1 && line == "size,accuracy") continue;
    const size_t comma = line.find(',');
    LearningCurvePoint p;
    const std::string_view size_text = comma == std::string_view::npos ? line : line.substr(0, comma);
    const std::string_view acc_text =
        comma == std::string_view::npos ? std::string_view{} : Trim(line.substr(comma + 1));
    auto r1 = std::from_chars(size_text.data(), size_text.data() + size_text.size(), p.train_size);
    auto r2 = std::from_chars(acc_text.data(), acc_text.data() + acc_text.size(), p.accuracy);
    if (comma == std::string_view::npos || r1.ec != std::errc() ||
        r1.ptr != size_text.data() + size_text.size() || r2.ec != std::errc() ||
        r2.ptr != acc_text.data() + acc_text.size()) {
      throw Error("bad learning curve line " + std::to_string(line_no) + ": expected size,accuracy");
    }
    points.push_back(p);
  }
  return points;
}

}  // namespace mnpp
