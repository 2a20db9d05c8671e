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

// Masked noun-phrase prediction instances.
//
// A noun-phrase occurrence is masked when the same phrase (by norm) already
// occurred earlier in the sentence. Each distinct-norm phrase that ends before
// the mask becomes a distractor. The gold phrase and the distractor therefore
// both precede the blank, the same configuration a pronoun has with respect
// to its candidate antecedents.

#ifndef MNPP_INSTANCE_GEN_H_
#define MNPP_INSTANCE_GEN_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mnpp/corpus_ingest.h"
#include "mnpp/text_analysis.h"

namespace mnpp {

enum class Bucket { kEasy, kMedium, kHard };

struct DifficultyAnnotation {
  std::optional<double> similarity;  // nullopt when not computable
  Bucket bucket = Bucket::kMedium;

  bool operator==(const DifficultyAnnotation&) const = default;
};

struct MnppInstance {
  std::string instance_id;
  std::string doc_id;
  std::string source_tag;
  std::string sentence;
  std::string first_half;
  std::string second_half;
  std::string candidate_a;
  std::string candidate_b;
  int label = 0;  // index of the gold candidate
  std::string masked_norm;
  std::string distractor_norm;
  size_t mask_char_start = 0;
  size_t mask_char_end = 0;
  // Only set once the instance has been through difficulty bucketing.
  std::optional<DifficultyAnnotation> difficulty;

  const std::string& gold() const { return label == 0 ? candidate_a : candidate_b; }
  const std::string& distractor() const { return label == 0 ? candidate_b : candidate_a; }

  bool operator==(const MnppInstance&) const = default;
};

struct GenConfig {
  size_t max_per_sentence = 2;

  void Validate() const;
};

// Candidate pairs are ranked by latest mask site first, then by the distractor
// occurrence nearest before the mask; the first max_per_sentence survive.
// Candidate order is a pure function of (instance_id, seed).
std::vector<MnppInstance> GenerateInstances(const CleanSentence& sentence,
                                            std::span<const NounPhrase> noun_phrases,
                                            const GenConfig& cfg, uint64_t seed);

// Content hash of (sentence, mask span, distractor norm), 16 hex digits.
std::string InstanceId(std::string_view sentence, size_t mask_char_start,
                       size_t mask_char_end, std::string_view distractor_norm);

// Fraction of instances whose label is 0. Throws on an empty list.
double LabelBalance(std::span<const MnppInstance> instances);

// Analyzes and generates over all sentences on `jobs` threads. Given
// sentences sorted by (doc_id, sent_index), the result is sorted by
// (doc_id, sent_index, mask_char_start, distractor_norm).
std::vector<MnppInstance> GenerateAll(std::span<const CleanSentence> sentences,
                                      const GenConfig& cfg, uint64_t seed, unsigned jobs);

}  // namespace mnpp

#endif  // MNPP_INSTANCE_GEN_H_
