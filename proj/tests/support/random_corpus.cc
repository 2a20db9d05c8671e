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

#include "support/random_corpus.h"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "mnpp/text_analysis.h"

namespace mnpp::testing {

namespace fs = std::filesystem;

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  const std::string name = "mnpp_test_" + std::to_string(::getpid()) + "_" +
                           std::to_string(counter.fetch_add(1));
  path_ = fs::temp_directory_path() / name;
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void WriteText(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

namespace {

template <size_t N>
const char* Pick(Rng& rng, const std::array<const char*, N>& words) {
  return words[rng.Below(N)];
}

constexpr std::array<const char*, 7> kDets = {"the", "the", "the", "a", "this", "his", "their"};
constexpr std::array<const char*, 6> kAdjs = {"red", "old", "big", "small", "green", "quiet"};
constexpr std::array<const char*, 10> kNouns = {"cup",  "chair", "dog",  "house", "book",
                                                "river", "car",  "tree", "table", "window"};
constexpr std::array<const char*, 6> kNames = {"John", "Mary", "Paris", "Dr. Smith",
                                               "Mr. Brown", "Celebration"};
constexpr std::array<const char*, 10> kVerbs = {"saw", "took", "put", "knocked over", "found",
                                                "moved", "doesn't fit", "was near", "liked",
                                                "won't leave"};
constexpr std::array<const char*, 6> kPreps = {"on", "in", "near", "under", "over", "with"};
constexpr std::array<const char*, 5> kPronouns = {"he", "she", "it", "they", "we"};
constexpr std::array<const char*, 6> kJoins = {", and ", ", but ", " because ", "; ", " and then ",
                                               " -- "};
constexpr std::array<const char*, 6> kEnds = {".", ".", ".", "!", "?", "\"."};

std::string NounPhraseText(Rng& rng) {
  const uint64_t kind = rng.Below(10);
  if (kind == 0) return Pick(rng, kNames);
  if (kind == 1) return Pick(rng, kPronouns);
  std::string np;
  if (rng.Below(6) != 0) np += std::string(Pick(rng, kDets)) + " ";
  if (rng.Below(12) == 0) np += rng.Below(2) ? "two " : "3 ";
  if (rng.Below(4) == 0) np += std::string(Pick(rng, kAdjs)) + " ";
  np += Pick(rng, kNouns);
  if (rng.Below(15) == 0) np = "(" + np + ")";
  return np;
}

}  // namespace

std::string RandomDocument(Rng& rng, size_t sentences) {
  std::string doc;
  for (size_t s = 0; s < sentences; ++s) {
    std::string sent;
    const uint64_t clauses = 1 + rng.Below(4);
    for (uint64_t c = 0; c < clauses; ++c) {
      if (c > 0) sent += Pick(rng, kJoins);
      sent += NounPhraseText(rng) + " " + Pick(rng, kVerbs) + " ";
      if (rng.Below(3) == 0) sent += std::string(Pick(rng, kPreps)) + " ";
      sent += NounPhraseText(rng);
      if (rng.Below(3) == 0) sent += " " + std::string(Pick(rng, kPreps)) + " " + NounPhraseText(rng);
      if (rng.Below(40) == 0) sent += " #42%";
      if (rng.Below(50) == 0) sent += " caf\xc3\xa9";
    }
    sent[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(sent[0])));
    if (rng.Below(20) == 0) sent = "\"" + sent;
    sent += Pick(rng, kEnds);
    doc += sent;
    doc += rng.Below(8) == 0 ? "\n\n" : (rng.Below(5) == 0 ? "\n" : " ");
  }
  return doc;
}

int RunCommand(const std::string& cmd, std::string* out) {
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed: " + cmd);
  std::string captured;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) captured.append(buf.data(), n);
  const int status = ::pclose(pipe);
  if (out) *out = std::move(captured);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string NormOf(std::string_view phrase) {
  std::string out;
  bool pending_space = false;
  for (char c : phrase) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::vector<std::string> CheckInstance(const MnppInstance& inst) {
  std::vector<std::string> v;
  const auto fail = [&](const std::string& what) { v.push_back(inst.instance_id + ": " + what); };

  if (inst.label != 0 && inst.label != 1) fail("label out of range");
  if (inst.first_half + inst.gold() + inst.second_half != inst.sentence) fail("reconstruction");
  if (inst.first_half.size() != inst.mask_char_start) fail("first_half length != mask start");
  if (inst.mask_char_end != inst.mask_char_start + inst.gold().size()) fail("mask span length");
  if (NormOf(inst.gold()) != inst.masked_norm) fail("gold norm != masked_norm");
  if (NormOf(inst.distractor()) != inst.distractor_norm) fail("distractor norm mismatch");
  if (inst.masked_norm == inst.distractor_norm) fail("candidate norms equal");
  if (inst.instance_id.size() != 16) fail("instance_id length");

  const auto nps = Analyze(inst.sentence).noun_phrases;
  bool mask_is_np = false;
  bool gold_before = false;
  bool distractor_before = false;
  for (const auto& np : nps) {
    const std::string norm = NormOf(inst.sentence.substr(np.char_start, np.char_end - np.char_start));
    if (np.char_start == inst.mask_char_start && np.char_end == inst.mask_char_end &&
        norm == inst.masked_norm) {
      mask_is_np = true;
    }
    if (np.char_end < inst.mask_char_start) {
      gold_before = gold_before || norm == inst.masked_norm;
      distractor_before = distractor_before || norm == inst.distractor_norm;
    }
  }
  if (!mask_is_np) fail("mask span is not a noun phrase");
  if (!gold_before) fail("no earlier occurrence of masked_norm");
  if (!distractor_before) fail("no distractor occurrence before the mask");
  return v;
}

}  // namespace mnpp::testing
