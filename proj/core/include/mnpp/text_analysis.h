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

// Deterministic shallow linguistic layer: sentence segmentation,
// tokenization, part-of-speech tagging and noun-phrase chunking.
//
// The tagger is a cascade over bundled word lists (closed-class words first,
// then an open-class lexicon of majority tags, then suffix rules). The
// chunker matches DET? NUM? ADJ* (NOUN|PROPN)+ left to right, longest match
// first. All functions are pure; a Lexicon is immutable once loaded.

#ifndef MNPP_TEXT_ANALYSIS_H_
#define MNPP_TEXT_ANALYSIS_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace mnpp {

enum class PosTag { kDet, kAdj, kNoun, kPropn, kPron, kVerb, kAdp, kNum, kPunct, kOther };

std::string_view PosTagName(PosTag tag);
std::optional<PosTag> ParsePosTag(std::string_view name);

struct Token {
  std::string surface;
  std::string lower;
  PosTag pos = PosTag::kOther;
  // Byte offsets into the sentence, end exclusive.
  size_t char_start = 0;
  size_t char_end = 0;
};

struct NounPhrase {
  size_t tok_start = 0;
  size_t tok_end = 0;  // exclusive
  size_t char_start = 0;
  size_t char_end = 0;
  std::string text;
  // Lowercased, whitespace-collapsed text; the identity key for candidates.
  std::string norm;
};

// Byte range of one sentence inside a larger text, whitespace-trimmed.
struct TextSpan {
  size_t begin = 0;
  size_t end = 0;
};

class Lexicon {
 public:
  // Loads closed_class.tsv, open_class.tsv and abbreviations.txt from dir.
  static Lexicon Load(const std::filesystem::path& dir);

  // Process-wide lexicon from $MNPP_DATA_DIR, falling back to the data
  // directory recorded at build/install time. Loaded once.
  static const Lexicon& Default();
  static std::filesystem::path DefaultDataDir();

  std::optional<PosTag> ClosedClass(std::string_view lower) const;
  std::optional<PosTag> OpenClass(std::string_view lower) const;

  // `word` includes its trailing period, e.g. "Dr.".
  bool IsAbbreviation(std::string_view word) const;

  size_t open_class_size() const { return open_.size(); }
  size_t closed_class_size() const { return closed_.size(); }

 private:
  std::unordered_map<std::string, PosTag> closed_;
  std::unordered_map<std::string, PosTag> open_;
  std::unordered_set<std::string> abbreviations_;
};

// Sentence boundaries: a run of . ! ? (plus closing quotes or brackets)
// followed by whitespace and an uppercase letter (optionally behind an
// opening quote or bracket) or by end of text; blank lines also end a
// sentence. Abbreviations and single-letter initials never end a sentence.
std::vector<TextSpan> SplitSentenceSpans(std::string_view text,
                                         const Lexicon& lexicon = Lexicon::Default());
std::vector<std::string> SplitSentences(std::string_view text,
                                        const Lexicon& lexicon = Lexicon::Default());

// Whitespace split, leading/trailing punctuation detached one character at a
// time (abbreviation periods stay attached), clitics 's n't 'll 're 've 'd
// split off. Tags are left as kOther.
std::vector<Token> Tokenize(std::string_view sentence,
                            const Lexicon& lexicon = Lexicon::Default());

std::vector<Token> TagPos(std::vector<Token> tokens,
                          const Lexicon& lexicon = Lexicon::Default());

// `sentence` is the text the tokens were cut from; phrase text is sliced
// from it so that sentence[char_start, char_end) == text.
std::vector<NounPhrase> ChunkNounPhrases(std::span<const Token> tokens,
                                         std::string_view sentence);

struct AnalyzedSentence {
  std::vector<Token> tokens;
  std::vector<NounPhrase> noun_phrases;
};

AnalyzedSentence Analyze(std::string_view sentence,
                         const Lexicon& lexicon = Lexicon::Default());

}  // namespace mnpp

#endif  // MNPP_TEXT_ANALYSIS_H_
