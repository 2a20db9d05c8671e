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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "mnpp/records.h"
#include "support/planted.h"

namespace mnpp {
namespace {

EmbeddingTable Parse(const std::string& text) {
  std::istringstream in(text);
  return ParseEmbeddings(in, "mem");
}

ScoredInstance WithSimilarity(std::optional<double> sim, int id) {
  ScoredInstance s;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016x", id);
  s.instance.instance_id = buf;
  s.similarity = sim;
  return s;
}

std::map<Bucket, size_t> Sizes(const std::vector<ScoredInstance>& v) {
  std::map<Bucket, size_t> out;
  for (const auto& s : v) out[s.bucket]++;
  return out;
}

TEST(LoadEmbeddingsTest, TwoEntries) {
  const auto t = Parse("a 1.0 0.0\nb 0.0 1.0");
  EXPECT_EQ(t.dim(), 2u);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(*t.Find("b"), (std::vector<double>{0.0, 1.0}));
}

TEST(LoadEmbeddingsTest, ShortLineReportsLineNumber) {
  try {
    Parse("a 1.0 0.0\nb 0.0 1.0\nc 1.0\n");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("mem:3"), std::string::npos) << e.what();
  }
}

TEST(LoadEmbeddingsTest, DuplicateLastWins) {
  const auto t = Parse("a 1 0\nA 0 1\n");
  EXPECT_EQ(t.size(), 1u);
  EXPECT_EQ(t.duplicates(), 1u);
  EXPECT_EQ(*t.Find("a"), (std::vector<double>{0.0, 1.0}));
}

TEST(LoadEmbeddingsTest, RejectsGarbage) {
  EXPECT_THROW(Parse(""), Error);
  EXPECT_THROW(Parse("a 1 x\n"), Error);
  EXPECT_THROW(Parse("a nan 1\n"), Error);
  EXPECT_THROW(LoadEmbeddings("/no/such/embeddings.txt"), Error);
}

TEST(PhraseVectorTest, Cases) {
  const auto t = Parse("the 1 0\ncup 0 1\n");
  EXPECT_EQ(*PhraseVector("the cup", t), (std::vector<double>{0.5, 0.5}));
  EXPECT_FALSE(PhraseVector("zzzqq", t).has_value());
  EXPECT_EQ(*PhraseVector("the zzzqq", t), (std::vector<double>{1.0, 0.0}));
}

TEST(CosineTest, HandValues) {
  const std::vector<double> x{3, 4}, e1{1, 0}, e2{0, 1}, d{1, 1};
  EXPECT_NEAR(CosineSimilarity(x, x), 1.0, 1e-12);
  EXPECT_NEAR(CosineSimilarity(e1, e2), 0.0, 1e-12);
  EXPECT_NEAR(CosineSimilarity(e1, d), 0.7071, 1e-4);
  EXPECT_NEAR(CosineSimilarity(e1, d), std::sqrt(2.0) / 2.0, 1e-12);
}

TEST(CosineTest, ZeroVectorIsAnError) {
  const std::vector<double> z{0, 0}, e1{1, 0};
  EXPECT_THROW(CosineSimilarity(z, e1), Error);
}

TEST(CosineTest, SymmetricAndBounded) {
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> u(7), v(7);
    for (auto& x : u) x = testing::Gaussian(rng);
    for (auto& x : v) x = testing::Gaussian(rng);
    const double a = CosineSimilarity(u, v);
    EXPECT_NEAR(a, CosineSimilarity(v, u), 1e-12);
    EXPECT_LE(std::abs(a), 1.0);
  }
}

TEST(BucketizeTest, NineEvenlySpaced) {
  std::vector<ScoredInstance> v;
  for (int i = 1; i <= 9; ++i) v.push_back(WithSimilarity(i / 10.0, i));
  const auto out = Bucketize(v);
  for (const auto& s : out) {
    const double sim = *s.similarity;
    const Bucket want = sim > 0.65 ? Bucket::kHard : sim > 0.35 ? Bucket::kMedium : Bucket::kEasy;
    EXPECT_EQ(s.bucket, want) << sim;
  }
}

TEST(BucketizeTest, SingleIsHard) {
  const auto out = Bucketize({WithSimilarity(0.3, 1)});
  EXPECT_EQ(out[0].bucket, Bucket::kHard);
}

TEST(BucketizeTest, EmptyIsAnError) { EXPECT_THROW(Bucketize({}), Error); }

TEST(BucketizeTest, PartitionLawForManySizes) {
  Rng rng(1);
  for (size_t n : {2u, 3u, 4u, 5u, 10u, 11u, 100u, 101u, 999u}) {
    std::vector<ScoredInstance> v;
    for (size_t i = 0; i < n; ++i) v.push_back(WithSimilarity(rng.UnitOpen(), i));
    const auto sizes = Sizes(Bucketize(v));
    size_t lo = n, hi = 0, total = 0;
    for (Bucket b : {Bucket::kEasy, Bucket::kMedium, Bucket::kHard}) {
      const size_t k = sizes.count(b) ? sizes.at(b) : 0;
      lo = std::min(lo, k);
      hi = std::max(hi, k);
      total += k;
    }
    EXPECT_EQ(total, n);
    EXPECT_LE(hi - lo, 1u) << "n=" << n;
  }
}

TEST(BucketizeTest, HundredThousandWithinOne) {
  Rng rng(2);
  std::vector<ScoredInstance> v;
  for (int i = 0; i < 100000; ++i) v.push_back(WithSimilarity(rng.UnitOpen(), i));
  const auto sizes = Sizes(Bucketize(std::move(v)));
  EXPECT_NEAR(static_cast<double>(sizes.at(Bucket::kHard)), 33333.0, 1.0);
  EXPECT_NEAR(static_cast<double>(sizes.at(Bucket::kMedium)), 33334.0, 1.0);
  EXPECT_NEAR(static_cast<double>(sizes.at(Bucket::kEasy)), 33333.0, 1.0);
}

TEST(BucketizeTest, OrderedBySimilarityAndMissingGoesMedium) {
  Rng rng(3);
  std::vector<ScoredInstance> v;
  for (int i = 0; i < 300; ++i) {
    v.push_back(WithSimilarity(i % 10 == 0 ? std::nullopt : std::optional(rng.UnitOpen()), i));
  }
  const auto out = Bucketize(v);
  ASSERT_EQ(out.size(), v.size());
  std::map<Bucket, std::pair<double, double>> range;  // min, max
  for (size_t i = 0; i < out.size(); ++i) {
    EXPECT_EQ(out[i].instance.instance_id, v[i].instance.instance_id) << "order preserved";
    if (!out[i].similarity) {
      EXPECT_EQ(out[i].bucket, Bucket::kMedium);
      continue;
    }
    auto [it, fresh] = range.try_emplace(out[i].bucket, *out[i].similarity, *out[i].similarity);
    it->second.first = std::min(it->second.first, *out[i].similarity);
    it->second.second = std::max(it->second.second, *out[i].similarity);
  }
  EXPECT_GE(range[Bucket::kHard].first, range[Bucket::kMedium].second);
  EXPECT_GE(range[Bucket::kMedium].first, range[Bucket::kEasy].second);
}

TEST(BucketizeTest, TiesBrokenByInstanceId) {
  std::vector<ScoredInstance> v;
  for (int i = 0; i < 6; ++i) v.push_back(WithSimilarity(0.5, 5 - i));
  const auto out = Bucketize(v);
  // Ids 0 and 1 come first in the descending order and land in HARD.
  for (const auto& s : out) {
    const int id = std::stoi(s.instance.instance_id, nullptr, 16);
    EXPECT_EQ(s.bucket, id < 2 ? Bucket::kHard : id < 4 ? Bucket::kMedium : Bucket::kEasy);
  }
}

MnppInstance Pair(const std::string& a, const std::string& b, int id) {
  MnppInstance inst;
  inst.instance_id = std::to_string(id);
  inst.candidate_a = a;
  inst.candidate_b = b;
  inst.masked_norm = a;
  inst.distractor_norm = b;
  return inst;
}

TEST(ScoreInstanceTest, MissingWhenEitherSideUnknown) {
  const auto t = Parse("the 1 0\ncup 0 1\nmug 0.1 1\n");
  EXPECT_FALSE(ScoreInstance(Pair("the cup", "zzz", 1), t).similarity);
  EXPECT_FALSE(ScoreInstance(Pair("qqq", "the mug", 1), t).similarity);
  const auto s = ScoreInstance(Pair("cup", "mug", 1), t);
  ASSERT_TRUE(s.similarity);
  EXPECT_NEAR(*s.similarity, 1.0 / std::sqrt(1.01), 1e-12);
}

TEST(ScoreInstanceTest, ScaleInvariantBuckets) {
  Rng rng(5);
  std::string text;
  const std::vector<std::string> words = {"cup", "mug", "dog", "cat", "car", "van", "pie", "hat"};
  for (const auto& w : words) {
    text += w;
    for (int d = 0; d < 6; ++d) text += " " + FormatDouble(testing::Gaussian(rng));
    text += "\n";
  }
  const auto table = Parse(text);
  std::vector<MnppInstance> instances;
  int id = 0;
  for (const auto& a : words) {
    for (const auto& b : words) {
      if (a != b) instances.push_back(Pair("the " + a, "the " + b, id++));
    }
  }
  const auto base = Bucketize(ScoreInstances(instances, table, 2));
  for (double factor : {0.001, 3.0, 250.0}) {
    const auto scaled = Bucketize(ScoreInstances(instances, table.Scaled(factor), 2));
    for (size_t i = 0; i < base.size(); ++i) EXPECT_EQ(base[i].bucket, scaled[i].bucket);
  }
}

TEST(AnnotateTest, RecordCarriesBucketAndNullSimilarity) {
  std::vector<ScoredInstance> v = {WithSimilarity(std::nullopt, 1), WithSimilarity(0.25, 2)};
  auto annotated = Annotate(Bucketize(v));
  ASSERT_EQ(annotated.size(), 2u);
  const std::string missing = ToJsonLine(annotated[0]);
  EXPECT_NE(missing.find("\"similarity\":null"), std::string::npos) << missing;
  EXPECT_NE(missing.find("\"bucket\":\"medium\""), std::string::npos) << missing;
  EXPECT_EQ(InstanceFromJson(missing), annotated[0]);
  const std::string hard = ToJsonLine(annotated[1]);
  EXPECT_NE(hard.find("\"similarity\":0.25"), std::string::npos) << hard;
  EXPECT_EQ(InstanceFromJson(hard), annotated[1]);
}

TEST(BucketNameTest, RoundTrip) {
  for (Bucket b : {Bucket::kEasy, Bucket::kMedium, Bucket::kHard}) {
    EXPECT_EQ(ParseBucket(BucketName(b)), b);
  }
  EXPECT_FALSE(ParseBucket("extreme"));
}

}  // namespace
}  // namespace mnpp
