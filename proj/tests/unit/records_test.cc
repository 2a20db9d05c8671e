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

#include "mnpp/records.h"

#include <gtest/gtest.h>

#include "support/random_corpus.h"

namespace mnpp {
namespace {

using testing::TempDir;
using testing::WriteText;

TEST(ForEachLineTest, SkipsBlankLinesAndCountsFromOne) {
  TempDir dir;
  WriteText(dir / "x.jsonl", "a\n\n  \nb\r\nc");
  std::vector<std::pair<std::string, size_t>> seen;
  ForEachLine(dir / "x.jsonl", [&](std::string_view line, size_t no) {
    seen.emplace_back(std::string(line), no);
  });
  ASSERT_EQ(seen.size(), 3u);
  EXPECT_EQ(seen[0], (std::pair<std::string, size_t>{"a", 1}));
  EXPECT_EQ(seen[1], (std::pair<std::string, size_t>{"b", 4}));
  EXPECT_EQ(seen[2], (std::pair<std::string, size_t>{"c", 5}));
}

TEST(ForEachLineTest, MissingFile) {
  EXPECT_THROW(ForEachLine("/no/such/file.jsonl", [](auto, auto) {}), Error);
  EXPECT_THROW(ReadFile("/no/such/file"), Error);
}

TEST(InstanceRecordTest, BadRecordsReportLine) {
  TempDir dir;
  WriteText(dir / "bad.jsonl", "{\"instance_id\":\"x\"}\n");
  try {
    ReadInstances(dir / "bad.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find(":1"), std::string::npos) << e.what();
  }
}

TEST(InstanceRecordTest, WriteReadRoundTrip) {
  TempDir dir;
  MnppInstance inst;
  inst.instance_id = "0123456789abcdef";
  inst.doc_id = "cnn/a.txt";
  inst.source_tag = "cnn";
  inst.sentence = "The cup and the \"mug\" met the cup.";
  inst.first_half = "The cup and the \"mug\" met ";
  inst.second_half = ".";
  inst.candidate_a = "the \"mug\"";
  inst.candidate_b = "the cup";
  inst.label = 1;
  inst.masked_norm = "the cup";
  inst.distractor_norm = "the \"mug\"";
  inst.mask_char_start = 26;
  inst.mask_char_end = 33;
  WriteInstances(dir / "i.jsonl", {inst, inst});
  const auto back = ReadInstances(dir / "i.jsonl");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0], inst);
  EXPECT_EQ(ReadFile(dir / "i.jsonl"), ToJsonLine(inst) + "\n" + ToJsonLine(inst) + "\n");
}

}  // namespace
}  // namespace mnpp
