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

#include <algorithm>
#include <map>

#include "mnpp/common.h"

namespace mnpp {

void GenConfig::Validate() const {
  if (max_per_sentence < 1) throw Error("generation.max_per_sentence must be >= 1");
}

std::string InstanceId(std::string_view sentence, size_t mask_char_start,
                       size_t mask_char_end, std::string_view distractor_norm) {
  std::string material(sentence);
  material += '\x1f';
  material += std::to_string(mask_char_start);
  material += '\x1f';
  material += std::to_string(mask_char_end);
  material += '\x1f';
  material += distractor_norm;
  return Sha256Hex(material).substr(0, 16);
}

std::vector<MnppInstance> GenerateInstances(const CleanSentence& sentence,
                                            std::span<const NounPhrase> nps,
                                            const GenConfig& cfg, uint64_t seed) {
  struct Pair {
    size_t mask;
    size_t distractor;
  };
  std::vector<Pair> pairs;
  for (size_t j = 0; j < nps.size(); ++j) {
    const NounPhrase& mask = nps[j];
    bool gold_before = false;
    // Nearest earlier occurrence of each other norm.
    std::map<std::string_view, size_t> nearest;
    for (size_t i = 0; i < j; ++i) {
      if (nps[i].char_end >= mask.char_start) continue;
      if (nps[i].norm == mask.norm) {
        gold_before = true;
      } else {
        nearest[nps[i].norm] = i;
      }
    }
    if (!gold_before) continue;
    for (const auto& [norm, i] : nearest) pairs.push_back({j, i});
  }

  std::stable_sort(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
    if (a.mask != b.mask) return a.mask > b.mask;
    return nps[a.distractor].char_end > nps[b.distractor].char_end;
  });
  if (pairs.size() > cfg.max_per_sentence) pairs.resize(cfg.max_per_sentence);
  std::sort(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
    if (nps[a.mask].char_start != nps[b.mask].char_start) {
      return nps[a.mask].char_start < nps[b.mask].char_start;
    }
    return nps[a.distractor].norm < nps[b.distractor].norm;
  });

  std::vector<MnppInstance> out;
  out.reserve(pairs.size());
  const std::string& text = sentence.text;
  for (const Pair& pair : pairs) {
    const NounPhrase& mask = nps[pair.mask];
    const NounPhrase& distractor = nps[pair.distractor];
    MnppInstance inst;
    inst.instance_id = InstanceId(text, mask.char_start, mask.char_end, distractor.norm);
    inst.doc_id = sentence.doc_id;
    inst.source_tag = sentence.source_tag;
    inst.sentence = text;
    inst.first_half = text.substr(0, mask.char_start);
    inst.second_half = text.substr(mask.char_end);
    inst.masked_norm = mask.norm;
    inst.distractor_norm = distractor.norm;
    inst.mask_char_start = mask.char_start;
    inst.mask_char_end = mask.char_end;
    const bool swap = Hash64(inst.instance_id + '\x1f' + std::to_string(seed)) & 1;
    inst.label = swap ? 1 : 0;
    inst.candidate_a = swap ? distractor.text : mask.text;
    inst.candidate_b = swap ? mask.text : distractor.text;
    out.push_back(std::move(inst));
  }
  return out;
}

double LabelBalance(std::span<const MnppInstance> instances) {
  if (instances.empty()) throw Error("empty dataset");
  const auto zeros = std::count_if(instances.begin(), instances.end(),
                                   [](const MnppInstance& i) { return i.label == 0; });
  return static_cast<double>(zeros) / static_cast<double>(instances.size());
}

std::vector<MnppInstance> GenerateAll(std::span<const CleanSentence> sentences,
                                      const GenConfig& cfg, uint64_t seed, unsigned jobs) {
  cfg.Validate();
  const Lexicon& lexicon = Lexicon::Default();
  std::vector<std::vector<MnppInstance>> per_sentence(sentences.size());
  ParallelFor(sentences.size(), jobs, [&](size_t i) {
    const AnalyzedSentence analyzed = Analyze(sentences[i].text, lexicon);
    per_sentence[i] = GenerateInstances(sentences[i], analyzed.noun_phrases, cfg, seed);
  });
  std::vector<MnppInstance> out;
  for (auto& block : per_sentence) {
    std::move(block.begin(), block.end(), std::back_inserter(out));
  }
  return out;
}

}  // namespace mnpp
