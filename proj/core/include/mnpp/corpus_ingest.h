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

#ifndef MNPP_CORPUS_INGEST_H_
#define MNPP_CORPUS_INGEST_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mnpp/text_analysis.h"

namespace mnpp {

struct RawDocument {
  // "<source_tag>/<path relative to the corpus root>", '/'-separated.
  std::string doc_id;
  std::string source_tag;
  // Valid UTF-8, LF line endings.
  std::string text;
};

struct CleanSentence {
  std::string doc_id;
  // Position among the document's segmented sentences before filtering.
  size_t sent_index = 0;
  std::string text;
  std::string source_tag;

  bool operator==(const CleanSentence&) const = default;
};

struct CleaningConfig {
  size_t min_tokens = 8;
  size_t max_tokens = 60;
  // A sentence loses to the charset filter when more than this fraction of
  // its characters had to be removed, or when no letter survives.
  double max_special_fraction = 0.3;

  void Validate() const;
};

struct IngestReport {
  uint64_t documents = 0;
  uint64_t files_skipped = 0;
  uint64_t sentences_seen = 0;
  uint64_t sentences_kept = 0;
  uint64_t sentences_dropped_short = 0;
  uint64_t sentences_dropped_long = 0;
  uint64_t sentences_dropped_charset = 0;
  std::vector<std::string> warnings;

  IngestReport& operator+=(const IngestReport& other);
};

// Yields the .txt files under a corpus root one document at a time, in
// byte-lexicographic order of their relative paths. Files that are not valid
// UTF-8 are skipped with a warning. Throws if the root cannot be read.
class CorpusReader {
 public:
  CorpusReader(std::filesystem::path root, std::string source_tag);

  std::optional<RawDocument> Next();

  const IngestReport& report() const { return report_; }
  size_t file_count() const { return files_.size(); }

 private:
  std::filesystem::path root_;
  std::string source_tag_;
  std::vector<std::string> files_;  // relative, generic form, sorted
  size_t next_ = 0;
  IngestReport report_;
};

std::vector<RawDocument> LoadCorpus(const std::filesystem::path& root,
                                    const std::string& source_tag,
                                    IngestReport* report = nullptr);

// CRLF/CR to LF, BOM removed.
std::string NormalizeLineEndings(std::string_view text);

// Drops "@highlight" lines of CNN story files together with the highlight
// paragraph that follows each of them.
std::string StripCnnHighlights(std::string_view text);

// Maps typographic quotes and dashes to ASCII, then removes every character
// outside letters, digits, whitespace and the punctuation . , ; : ! ? ' " ( ) -.
// removed_before[b] counts removed characters before output byte b (size is
// output size + 1).
std::string FilterCharset(std::string_view text, std::vector<uint32_t>* removed_before);

std::vector<CleanSentence> CleanAndSegment(const RawDocument& doc,
                                           const CleaningConfig& cfg,
                                           IngestReport* report = nullptr,
                                           const Lexicon& lexicon = Lexicon::Default());

struct CorpusSpec {
  std::string source_tag;
  std::filesystem::path root;
};

// Reads every corpus, cleans documents on `jobs` threads and returns the
// sentences stably sorted by (doc_id, sent_index).
std::vector<CleanSentence> IngestCorpora(const std::vector<CorpusSpec>& corpora,
                                         const CleaningConfig& cfg, unsigned jobs,
                                         IngestReport* report = nullptr);

}  // namespace mnpp

#endif  // MNPP_CORPUS_INGEST_H_
