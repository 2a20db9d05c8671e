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

#include "mnpp/corpus_ingest.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include "mnpp/common.h"

namespace mnpp {

namespace fs = std::filesystem;

void CleaningConfig::Validate() const {
  if (min_tokens < 1) throw Error("cleaning.min_tokens must be >= 1");
  if (max_tokens <= min_tokens) {
    throw Error("cleaning.max_tokens must be greater than cleaning.min_tokens");
  }
  if (!(max_special_fraction >= 0.0 && max_special_fraction <= 1.0)) {
    throw Error("cleaning.max_special_fraction must be in [0, 1]");
  }
}

IngestReport& IngestReport::operator+=(const IngestReport& other) {
  documents += other.documents;
  files_skipped += other.files_skipped;
  sentences_seen += other.sentences_seen;
  sentences_kept += other.sentences_kept;
  sentences_dropped_short += other.sentences_dropped_short;
  sentences_dropped_long += other.sentences_dropped_long;
  sentences_dropped_charset += other.sentences_dropped_charset;
  warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
  return *this;
}

CorpusReader::CorpusReader(fs::path root, std::string source_tag)
    : root_(std::move(root)), source_tag_(std::move(source_tag)) {
  std::error_code ec;
  if (!fs::is_directory(root_, ec)) {
    throw Error("corpus root is not a readable directory: " + root_.string());
  }
  fs::recursive_directory_iterator it(root_, ec), end;
  if (ec) throw Error("cannot read corpus root " + root_.string() + ": " + ec.message());
  for (; it != end; it.increment(ec)) {
    if (ec) throw Error("cannot read corpus root " + root_.string() + ": " + ec.message());
    if (!it->is_regular_file() || it->path().extension() != ".txt") continue;
    files_.push_back(fs::relative(it->path(), root_).generic_string());
  }
  std::sort(files_.begin(), files_.end());
}

std::optional<RawDocument> CorpusReader::Next() {
  while (next_ < files_.size()) {
    const std::string& rel = files_[next_++];
    const fs::path path = root_ / rel;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      report_.files_skipped++;
      report_.warnings.push_back("cannot read " + path.string() + ", skipped");
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string bytes = buf.str();
    if (!IsValidUtf8(bytes)) {
      report_.files_skipped++;
      report_.warnings.push_back("not valid UTF-8: " + path.string() + ", skipped");
      continue;
    }
    report_.documents++;
    return RawDocument{source_tag_ + "/" + rel, source_tag_, NormalizeLineEndings(bytes)};
  }
  return std::nullopt;
}

std::vector<RawDocument> LoadCorpus(const fs::path& root, const std::string& source_tag,
                                    IngestReport* report) {
  CorpusReader reader(root, source_tag);
  std::vector<RawDocument> docs;
  while (auto doc = reader.Next()) docs.push_back(std::move(*doc));
  if (report) *report += reader.report();
  return docs;
}

std::string NormalizeLineEndings(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::string out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r') {
      out.push_back('\n');
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

std::string StripCnnHighlights(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool skipping = false;  // inside the paragraph following @highlight
  bool seen_content = false;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    const std::string_view trimmed = Trim(line);
    if (trimmed == "@highlight") {
      skipping = true;
      seen_content = false;
    } else if (skipping) {
      if (!trimmed.empty()) {
        seen_content = true;
      } else if (seen_content) {
        skipping = false;
      }
    } else {
      out.append(line);
      if (eol < text.size()) out.push_back('\n');
    }
    pos = eol + 1;
  }
  return out;
}

namespace {

bool IsAllowedPunct(char32_t cp) {
  switch (cp) {
    case '.': case ',': case ';': case ':': case '!': case '?':
    case '\'': case '"': case '(': case ')': case '-':
      return true;
    default:
      return false;
  }
}

// Typographic punctuation folded to its ASCII counterpart; 0 if none.
std::string_view AsciiFold(char32_t cp) {
  switch (cp) {
    case 0x2018: case 0x2019: case 0x201A: case 0x2032: return "'";
    case 0x201C: case 0x201D: case 0x201E: case 0x2033: return "\"";
    case 0x2010: case 0x2011: case 0x2012: case 0x2013: case 0x2014:
    case 0x2212: return "-";
    case 0x2026: return "...";
    case 0x00A0: return " ";
    default: return {};
  }
}

}  // namespace

std::string FilterCharset(std::string_view text, std::vector<uint32_t>* removed_before) {
  std::string out;
  out.reserve(text.size());
  std::vector<uint32_t> removed;
  removed.reserve(text.size() + 1);
  uint32_t count = 0;
  auto emit = [&](std::string_view piece) {
    for (char c : piece) {
      out.push_back(c);
      removed.push_back(count);
    }
  };
  size_t pos = 0;
  while (pos < text.size()) {
    const size_t start = pos;
    const char32_t cp = DecodeUtf8(text, &pos);
    if (cp == '\n' || cp == ' ') {
      emit(text.substr(start, pos - start));
    } else if (cp == '\t' || cp == '\f' || cp == '\v' || cp == '\r') {
      emit(" ");
    } else if ((cp >= '0' && cp <= '9') || IsLetter(cp) || IsAllowedPunct(cp)) {
      emit(text.substr(start, pos - start));
    } else if (auto folded = AsciiFold(cp); !folded.empty()) {
      emit(folded);
    } else {
      ++count;
    }
  }
  removed.push_back(count);
  if (removed_before) *removed_before = std::move(removed);
  return out;
}

std::vector<CleanSentence> CleanAndSegment(const RawDocument& doc, const CleaningConfig& cfg,
                                           IngestReport* report, const Lexicon& lexicon) {
  IngestReport local;
  std::vector<CleanSentence> out;
  const std::string body =
      doc.source_tag == "cnn" ? StripCnnHighlights(doc.text) : doc.text;
  std::vector<uint32_t> removed;
  const std::string cleaned = FilterCharset(body, &removed);
  const auto spans = SplitSentenceSpans(cleaned, lexicon);
  size_t previous_end = 0;
  for (size_t index = 0; index < spans.size(); ++index) {
    const TextSpan& span = spans[index];
    local.sentences_seen++;
    std::string text = CollapseWhitespace(
        std::string_view(cleaned).substr(span.begin, span.end - span.begin));
    // Characters removed between sentences count against the next one.
    const double dropped = removed[span.end] - removed[previous_end];
    previous_end = span.end;
    size_t kept = 0;
    bool has_letter = false;
    for (size_t pos = 0; pos < text.size();) {
      const char32_t cp = DecodeUtf8(text, &pos);
      if (cp != ' ') ++kept;
      has_letter = has_letter || IsLetter(cp);
    }
    if (!has_letter || dropped / (dropped + static_cast<double>(kept)) > cfg.max_special_fraction) {
      local.sentences_dropped_charset++;
      continue;
    }
    const size_t tokens = Tokenize(text, lexicon).size();
    if (tokens < cfg.min_tokens) {
      local.sentences_dropped_short++;
      continue;
    }
    if (tokens > cfg.max_tokens) {
      local.sentences_dropped_long++;
      continue;
    }
    local.sentences_kept++;
    out.push_back(CleanSentence{doc.doc_id, index, std::move(text), doc.source_tag});
  }
  if (report) *report += local;
  return out;
}

std::vector<CleanSentence> IngestCorpora(const std::vector<CorpusSpec>& corpora,
                                         const CleaningConfig& cfg, unsigned jobs,
                                         IngestReport* report) {
  cfg.Validate();
  std::set<std::string> tags;
  IngestReport total;
  std::vector<RawDocument> docs;
  for (const CorpusSpec& spec : corpora) {
    if (!tags.insert(spec.source_tag).second) {
      throw Error("duplicate corpus source tag: " + spec.source_tag);
    }
    auto loaded = LoadCorpus(spec.root, spec.source_tag, &total);
    std::move(loaded.begin(), loaded.end(), std::back_inserter(docs));
  }

  const Lexicon& lexicon = Lexicon::Default();
  std::vector<std::vector<CleanSentence>> per_doc(docs.size());
  std::vector<IngestReport> reports(docs.size());
  ParallelFor(docs.size(), jobs, [&](size_t i) {
    per_doc[i] = CleanAndSegment(docs[i], cfg, &reports[i], lexicon);
  });

  std::vector<CleanSentence> sentences;
  for (size_t i = 0; i < docs.size(); ++i) {
    total += reports[i];
    std::move(per_doc[i].begin(), per_doc[i].end(), std::back_inserter(sentences));
  }
  std::stable_sort(sentences.begin(), sentences.end(),
                   [](const CleanSentence& a, const CleanSentence& b) {
                     if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
                     return a.sent_index < b.sent_index;
                   });
  if (report) *report += total;
  return sentences;
}

}  // namespace mnpp
