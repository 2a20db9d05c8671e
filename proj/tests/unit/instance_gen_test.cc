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

#include "mnpp/instance_gen.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <tuple>

#include "mnpp/corpus_ingest.h"
#include "mnpp/records.h"
#include "mnpp/text_analysis.h"
#include "support/random_corpus.h"

namespace mnpp {
namespace {

constexpr char kWorked[] =
    "She put the cup on the chair, but he knocked over the chair, and the cup fell.";

std::vector<MnppInstance> Generate(const std::string& text, uint64_t seed = 13,
                                   size_t max_per_sentence = 2) {
  const CleanSentence s{"t/doc.txt", 0, text, "t"};
  GenConfig cfg;
  cfg.max_per_sentence = max_per_sentence;
  return GenerateInstances(s, Analyze(text).noun_phrases, cfg, seed);
}

// Brute-force reference: every (mask start, distractor norm) pair that
// satisfies the positional rule, ranked by latest mask then by the distractor
// occurrence that ends closest to the mask.
std::vector<std::pair<size_t, std::string>> ReferencePairs(const std::string& text,
                                                           size_t keep) {
  const auto nps = Analyze(text).noun_phrases;
  std::vector<std::tuple<size_t, size_t, std::string>> ranked;  // mask start, dist end, norm
  for (const auto& mask : nps) {
    const std::string mnorm = testing::NormOf(mask.text);
    bool earlier = false;
    for (const auto& np : nps) {
      if (np.char_end < mask.char_start && testing::NormOf(np.text) == mnorm) earlier = true;
    }
    if (!earlier) continue;
    std::set<std::string> seen;
    for (const auto& d : nps) {
      const std::string dnorm = testing::NormOf(d.text);
      if (d.char_end >= mask.char_start || dnorm == mnorm || seen.count(dnorm)) continue;
      seen.insert(dnorm);
      size_t latest = 0;
      for (const auto& o : nps) {
        if (o.char_end < mask.char_start && testing::NormOf(o.text) == dnorm) {
          latest = std::max(latest, o.char_end);
        }
      }
      ranked.emplace_back(mask.char_start, latest, dnorm);
    }
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    return std::get<1>(a) > std::get<1>(b);
  });
  if (ranked.size() > keep) ranked.resize(keep);
  std::vector<std::pair<size_t, std::string>> out;
  for (const auto& r : ranked) out.emplace_back(std::get<0>(r), std::get<2>(r));
  std::sort(out.begin(), out.end());
  return out;
}

TEST(GenerateInstancesTest, WorkedExample) {
  const auto instances = Generate(kWorked);
  const auto it = std::find_if(instances.begin(), instances.end(), [](const MnppInstance& i) {
    return i.masked_norm == "the chair" && i.distractor_norm == "the cup";
  });
  ASSERT_NE(it, instances.end());
  EXPECT_EQ(it->gold(), "the chair");
  EXPECT_EQ(it->distractor(), "the cup");
  EXPECT_EQ(std::set<std::string>({it->candidate_a, it->candidate_b}),
            std::set<std::string>({"the cup", "the chair"}));
  EXPECT_EQ(it->first_half, "She put the cup on the chair, but he knocked over ");
  EXPECT_EQ(it->second_half, ", and the cup fell.");
  EXPECT_EQ(it->mask_char_start, 50u);
  EXPECT_EQ(it->mask_char_end, 59u);
}

TEST(GenerateInstancesTest, MatchesReferenceOnWorkedExample) {
  std::vector<std::pair<size_t, std::string>> got;
  for (const auto& i : Generate(kWorked)) got.emplace_back(i.mask_char_start, i.distractor_norm);
  EXPECT_EQ(got, ReferencePairs(kWorked, 2));
}

TEST(GenerateInstancesTest, NoRepeatedPhrase) { EXPECT_TRUE(Generate("The dog saw the cat.").empty()); }

TEST(GenerateInstancesTest, RepeatWithoutDistinctDistractor) {
  EXPECT_TRUE(Generate("The cat saw the cat.").empty());
}

TEST(GenerateInstancesTest, CaseInsensitiveIdentity) {
  const auto instances = Generate("The cup hit a wall, and then the cup broke.");
  ASSERT_EQ(instances.size(), 1u);
  EXPECT_EQ(instances[0].masked_norm, "the cup");
  EXPECT_EQ(instances[0].gold(), "the cup");
  EXPECT_EQ(instances[0].distractor(), "a wall");
}

TEST(GenerateInstancesTest, CapKeepsLatestMasksFirst) {
  const std::string text =
      "The dog and the cat met the horse, then the dog and the cat left the horse.";
  EXPECT_EQ(Generate(text, 13, 1).size(), 1u);
  EXPECT_EQ(Generate(text, 13, 2).size(), 2u);
  for (size_t keep : {1u, 2u, 3u, 5u}) {
    std::vector<std::pair<size_t, std::string>> got;
    for (const auto& i : Generate(text, 13, keep)) {
      got.emplace_back(i.mask_char_start, i.distractor_norm);
    }
    EXPECT_EQ(got, ReferencePairs(text, keep)) << "keep=" << keep;
  }
}

TEST(GenerateInstancesTest, DeterministicAndSeedOnlyChangesOrder) {
  const auto a = Generate(kWorked, 7);
  const auto b = Generate(kWorked, 7);
  EXPECT_EQ(a, b);
  // A different seed may swap candidates but never changes the pair.
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const auto c = Generate(kWorked, seed);
    ASSERT_EQ(c.size(), a.size());
    for (size_t i = 0; i < c.size(); ++i) {
      EXPECT_EQ(c[i].instance_id, a[i].instance_id);
      EXPECT_EQ(c[i].gold(), a[i].gold());
    }
  }
}

TEST(GenerateInstancesTest, InstanceIdIsContentHash) {
  const auto instances = Generate(kWorked);
  for (const auto& i : instances) {
    const std::string material = std::string(kWorked) + '\x1f' +
                                 std::to_string(i.mask_char_start) + '\x1f' +
                                 std::to_string(i.mask_char_end) + '\x1f' + i.distractor_norm;
    EXPECT_EQ(i.instance_id, Sha256Hex(material).substr(0, 16));
  }
}

TEST(GenerateInstancesTest, RandomCorporaMatchReferenceAndInvariants) {
  Rng rng(2024);
  size_t checked = 0;
  std::set<std::string> ids;
  for (int doc = 0; doc < 150; ++doc) {
    for (const auto& text : SplitSentences(testing::RandomDocument(rng, 10))) {
      std::vector<std::pair<size_t, std::string>> got;
      for (const auto& inst : Generate(text, doc)) {
        for (const auto& v : testing::CheckInstance(inst)) ADD_FAILURE() << v << " in: " << text;
        got.emplace_back(inst.mask_char_start, inst.distractor_norm);
        EXPECT_TRUE(ids.insert(inst.instance_id).second) << "id collision";
        ++checked;
      }
      EXPECT_EQ(got, ReferencePairs(text, 2)) << text;
    }
  }
  EXPECT_GT(checked, 200u);
}

TEST(LabelBalanceTest, SmallCases) {
  MnppInstance a, b;
  a.label = 0;
  b.label = 1;
  EXPECT_DOUBLE_EQ(LabelBalance(std::vector<MnppInstance>{a, b}), 0.5);
  EXPECT_DOUBLE_EQ(LabelBalance(std::vector<MnppInstance>(4, a)), 1.0);
  EXPECT_THROW(LabelBalance(std::vector<MnppInstance>{}), Error);
}

TEST(LabelBalanceTest, TenThousandSeededInstancesWithinBinomialBound) {
  // Distinct sentences, so every instance id (and hence every label bit) is
  // an independent hash draw.
  std::vector<MnppInstance> all;
  for (int i = 0; all.size() < 10000; ++i) {
    const std::string text = "Item " + std::to_string(i) +
                             ": she put the cup on the chair, but he knocked over the chair.";
    const CleanSentence s{"t/x.txt", static_cast<size_t>(i), text, "t"};
    for (auto& inst : GenerateInstances(s, Analyze(text).noun_phrases, {}, 13)) {
      all.push_back(std::move(inst));
    }
  }
  all.resize(10000);
  const double balance = LabelBalance(all);
  EXPECT_GE(balance, 0.47);
  EXPECT_LE(balance, 0.53);
}

TEST(GenerateAllTest, IndependentOfJobs) {
  Rng rng(8);
  std::vector<CleanSentence> sentences;
  for (int d = 0; d < 5; ++d) {
    const RawDocument doc{"t/" + std::to_string(d), "t", testing::RandomDocument(rng, 50)};
    for (auto& s : CleanAndSegment(doc, {})) sentences.push_back(std::move(s));
  }
  const auto one = GenerateAll(sentences, {}, 13, 1);
  const auto four = GenerateAll(sentences, {}, 13, 4);
  EXPECT_EQ(one, four);
  EXPECT_FALSE(one.empty());
}

TEST(InstanceRecordTest, JsonRoundTrip) {
  for (const auto& inst : Generate(kWorked)) {
    const std::string line = ToJsonLine(inst);
    EXPECT_EQ(InstanceFromJson(line), inst);
    for (const char* key : {"instance_id", "doc_id", "source_tag", "sentence", "first_half",
                            "second_half", "candidate_a", "candidate_b", "label", "masked_norm",
                            "distractor_norm", "mask_char_start", "mask_char_end"}) {
      EXPECT_NE(line.find(std::string("\"") + key + "\":"), std::string::npos) << key;
    }
    EXPECT_EQ(line.find("bucket"), std::string::npos);
  }
}

}  // namespace
}  // namespace mnpp
