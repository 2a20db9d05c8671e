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

// Downstream pronoun-resolution sets in one fill-in-the-blank schema:
// prefix + option + suffix, two options, one answer.

#ifndef MNPP_DOWNSTREAM_H_
#define MNPP_DOWNSTREAM_H_

#include <array>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mnpp/instance_gen.h"

namespace mnpp {

struct BinaryChoiceExample {
  std::string example_id;
  std::string prefix;
  std::string suffix;
  std::string option_a;
  std::string option_b;
  std::optional<int> answer;  // nullopt for unlabeled test sets
  std::string dataset_tag;
  // Grouping key for per-group accuracy (difficulty bucket for forged data).
  std::optional<std::string> group;

  const std::string& option(int index) const { return index == 0 ? option_a : option_b; }
  std::string Fill(int index) const { return prefix + option(index) + suffix; }
};

enum class Adapter { kMnpp, kPlaceholder, kPronoun, kCopa };

std::optional<Adapter> ParseAdapter(std::string_view name);
std::string_view AdapterName(Adapter adapter);

// WinoGrande convention: exactly one "_" in the sentence; answer 1|2.
BinaryChoiceExample FromPlaceholderRecord(std::string_view sentence_with_blank,
                                          std::string option1, std::string option2,
                                          std::optional<int> answer, std::string id,
                                          std::string dataset_tag = "placeholder");

// WSC/DPR/KnowRef style: a byte span addresses the pronoun to replace. The
// span must coincide with one token. Options are capitalized when the pronoun
// opens the sentence.
BinaryChoiceExample FromPronounRecord(std::string_view sentence, size_t pronoun_char_start,
                                      size_t pronoun_char_end,
                                      const std::array<std::string, 2>& candidates,
                                      std::optional<int> answer, std::string id,
                                      std::string dataset_tag = "pronoun");

// COPA: "<premise without final period> because|so " + alternative (first
// letter lowercased unless it is "I"), empty suffix.
BinaryChoiceExample FromCopaRecord(std::string_view premise, std::string_view choice1,
                                   std::string_view choice2, std::string_view question,
                                   std::optional<int> answer, std::string id,
                                   std::string dataset_tag = "copa");

BinaryChoiceExample FromMnppInstance(const MnppInstance& instance);

struct ConversionResult {
  std::vector<BinaryChoiceExample> examples;
  size_t errors = 0;
  std::vector<std::string> messages;  // "path:line: reason"
};

// Reads a JSONL file with the adapter's native record format. Bad records are
// skipped and counted; unreadable files throw.
ConversionResult ConvertFile(const std::filesystem::path& path, Adapter adapter,
                             std::string_view dataset_tag = {});

std::string ToJsonLine(const BinaryChoiceExample& example);

// score(prefix, option, suffix); higher means more plausible.
using Scorer = std::function<double(std::string_view, std::string_view, std::string_view)>;

// +1 for the gold fill of any labeled example in `examples`, 0 otherwise.
Scorer MakeOracleScorer(std::span<const BinaryChoiceExample> examples);

struct GroupStats {
  uint64_t n = 0;
  uint64_t n_correct = 0;
  double accuracy = 0.0;
};

struct EvalReport {
  std::string dataset_tag;
  uint64_t n = 0;
  uint64_t n_correct = 0;
  double accuracy = 0.0;
  uint64_t ties = 0;  // resolved toward option_a
  std::map<std::string, GroupStats> per_bucket;
  // confusion[gold][predicted]
  std::array<std::array<uint64_t, 2>, 2> confusion{};

  std::string ToJson() const;
};

// Index of the preferred option; ties go to option_a.
int Predict(const BinaryChoiceExample& example, const Scorer& scorer, bool* tie = nullptr);

// Throws "unlabeled example in eval" if any answer is missing.
EvalReport Evaluate(std::span<const BinaryChoiceExample> examples, const Scorer& scorer,
                    bool per_bucket = false);

// CSV "example_id,prediction" with prediction 0|1.
std::string PredictionsCsv(std::span<const BinaryChoiceExample> examples, const Scorer& scorer);

}  // namespace mnpp

#endif  // MNPP_DOWNSTREAM_H_
