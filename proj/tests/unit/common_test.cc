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

#include "mnpp/common.h"

#include <gtest/gtest.h>

#include <atomic>
#include <set>

namespace mnpp {
namespace {

TEST(Utf8Test, Validity) {
  EXPECT_TRUE(IsValidUtf8("plain"));
  EXPECT_TRUE(IsValidUtf8("caf\xC3\xA9 \xE2\x80\x9C\xF0\x9F\x98\x80"));
  EXPECT_FALSE(IsValidUtf8("caf\xE9"));
  EXPECT_FALSE(IsValidUtf8("\xC0\xAF"));          // overlong
  EXPECT_FALSE(IsValidUtf8("\xED\xA0\x80"));      // surrogate
  EXPECT_FALSE(IsValidUtf8("\xE2\x80"));          // truncated
}

TEST(Utf8Test, DecodeEncodeRoundTrip) {
  const std::string text = "a\xC3\xA9\xE2\x80\x94\xF0\x9F\x98\x80";
  std::string out;
  size_t pos = 0;
  size_t n = 0;
  while (pos < text.size()) {
    AppendUtf8(DecodeUtf8(text, &pos), &out);
    ++n;
  }
  EXPECT_EQ(out, text);
  EXPECT_EQ(n, 4u);
  EXPECT_EQ(CountCodePoints(text), 4u);
}

TEST(StringTest, WhitespaceAndCase) {
  EXPECT_EQ(Trim("  a b \n"), "a b");
  EXPECT_EQ(CollapseWhitespace(" a \t b\n\nc "), "a b c");
  EXPECT_EQ(ToLower("The \xC3\x89T\xC3\x89"), "the \xC3\xA9t\xC3\xA9");
  EXPECT_TRUE(IsUpperAt("\xC3\x89t", 0));
  EXPECT_FALSE(IsUpperAt("\xC3\xA9t", 0));
  EXPECT_TRUE(IsLetter(U'é'));
  EXPECT_FALSE(IsLetter(U'×'));
  EXPECT_FALSE(IsLetter(U'7'));
}

TEST(HashTest, KnownDigest) {
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(Hash64("abc"), 0xba7816bf8f01cfeaULL);
  EXPECT_NE(DeriveSeed(13, "sampling"), DeriveSeed(13, "shuffle"));
  EXPECT_EQ(DeriveSeed(13, "split"), Hash64(std::string("13\x1fsplit")));
}

TEST(RngTest, DeterministicAndInRange) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.Next(), b.Next());
  Rng r(1);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const uint64_t x = r.Below(7);
    ASSERT_LT(x, 7u);
    counts[x]++;
    const double u = r.UnitOpen();
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
  }
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
}

TEST(RngTest, ShuffleIsPermutation) {
  std::vector<int> v(100);
  for (int i = 0; i < 100; ++i) v[i] = i;
  Rng r(3);
  r.Shuffle(v);
  EXPECT_EQ(std::set<int>(v.begin(), v.end()).size(), 100u);
  EXPECT_NE(v[0] + v[1] * 100, 0 + 100);
}

TEST(ParallelForTest, CoversEveryIndexOnce) {
  for (unsigned jobs : {1u, 2u, 8u}) {
    std::vector<std::atomic<int>> hits(1000);
    ParallelFor(hits.size(), jobs, [&](size_t i) { hits[i]++; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
}

TEST(ParallelForTest, RethrowsFirstError) {
  EXPECT_THROW(ParallelFor(100, 4, [](size_t i) {
                 if (i == 37) throw Error("boom");
               }),
               Error);
}

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(0.25), "0.25");
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(1.0), "1");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(FormatDouble(x)), x);
}

}  // namespace
}  // namespace mnpp
