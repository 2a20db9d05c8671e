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

#include "mnpp/text_analysis.h"

#include <array>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <utility>

#include "mnpp/common.h"

namespace mnpp {

namespace {

constexpr std::array<std::pair<PosTag, std::string_view>, 10> kTagNames = {{
    {PosTag::kDet, "DET"},
    {PosTag::kAdj, "ADJ"},
    {PosTag::kNoun, "NOUN"},
    {PosTag::kPropn, "PROPN"},
    {PosTag::kPron, "PRON"},
    {PosTag::kVerb, "VERB"},
    {PosTag::kAdp, "ADP"},
    {PosTag::kNum, "NUM"},
    {PosTag::kPunct, "PUNCT"},
    {PosTag::kOther, "OTHER"},
}};

void LoadTagFile(const std::filesystem::path& path,
                 std::unordered_map<std::string, PosTag>* out) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon " + path.string());
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const size_t tab = line.find('\t');
    std::optional<PosTag> tag;
    if (tab != std::string::npos) tag = ParsePosTag(Trim(line.substr(tab + 1)));
    if (tab == 0 || !tag) {
      throw Error("malformed lexicon entry at " + path.string() + ":" +
                  std::to_string(line_no));
    }
    (*out)[line.substr(0, tab)] = *tag;
  }
}

bool IsPunctByte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u);
}

bool IsSentenceFinal(char c) { return c == '.' || c == '!' || c == '?'; }
bool IsCloser(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }
bool IsOpener(char c) { return c == '"' || c == '\'' || c == '(' || c == '['; }

bool AllPunct(std::string_view s) {
  for (char c : s) {
    if (!IsPunctByte(c)) return false;
  }
  return !s.empty();
}

bool IsNumeric(std::string_view s) {
  bool digit = false;
  for (char c : s) {
    if (c >= '0' && c <= '9') {
      digit = true;
    } else if (c != '.' && c != ',' && c != ':' && c != '-' && c != '/') {
      return false;
    }
  }
  return digit;
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

// "J." style initials behave like abbreviations.
bool IsInitial(std::string_view word) {
  return word.size() == 2 && word[1] == '.' && word[0] >= 'A' && word[0] <= 'Z';
}

bool KeepsPeriod(std::string_view word_with_period, const Lexicon& lexicon) {
  return IsInitial(word_with_period) || lexicon.IsAbbreviation(word_with_period);
}

void AddSpan(std::string_view text, size_t begin, size_t end,
             std::vector<TextSpan>* spans) {
  while (begin < end && IsAsciiSpace(text[begin])) ++begin;
  while (end > begin && IsAsciiSpace(text[end - 1])) --end;
  if (begin < end) spans->push_back({begin, end});
}

Token MakeToken(std::string_view sentence, size_t start, size_t end) {
  Token tok;
  tok.surface = std::string(sentence.substr(start, end - start));
  tok.lower = ToLower(tok.surface);
  tok.char_start = start;
  tok.char_end = end;
  return tok;
}

// Emits the word at [start, end), splitting a trailing clitic.
void EmitWord(std::string_view sentence, size_t start, size_t end,
              std::vector<Token>* out) {
  const std::string lower = ToLower(sentence.substr(start, end - start));
  size_t clitic = 0;
  if (lower.size() > 3 && EndsWith(lower, "n't")) {
    clitic = 3;
  } else if (lower.size() > 3 &&
             (EndsWith(lower, "'ll") || EndsWith(lower, "'re") ||
              EndsWith(lower, "'ve"))) {
    clitic = 3;
  } else if (lower.size() > 2 && (EndsWith(lower, "'s") || EndsWith(lower, "'d"))) {
    clitic = 2;
  }
  if (clitic == 0) {
    out->push_back(MakeToken(sentence, start, end));
    return;
  }
  out->push_back(MakeToken(sentence, start, end - clitic));
  out->push_back(MakeToken(sentence, end - clitic, end));
}

}  // namespace

std::string_view PosTagName(PosTag tag) {
  for (const auto& [t, name] : kTagNames) {
    if (t == tag) return name;
  }
  return "OTHER";
}

std::optional<PosTag> ParsePosTag(std::string_view name) {
  for (const auto& [t, n] : kTagNames) {
    if (n == name) return t;
  }
  return std::nullopt;
}

Lexicon Lexicon::Load(const std::filesystem::path& dir) {
  Lexicon lex;
  LoadTagFile(dir / "closed_class.tsv", &lex.closed_);
  LoadTagFile(dir / "open_class.tsv", &lex.open_);
  const auto abbrev_path = dir / "abbreviations.txt";
  std::ifstream in(abbrev_path);
  if (!in) throw Error("cannot open " + abbrev_path.string());
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view word = Trim(line);
    if (word.empty() || word[0] == '#') continue;
    lex.abbreviations_.emplace(word);
  }
  return lex;
}

std::filesystem::path Lexicon::DefaultDataDir() {
  if (const char* env = std::getenv("MNPP_DATA_DIR"); env && *env) return env;
#ifdef MNPP_INSTALL_DATA_DIR
  if (std::filesystem::exists(std::filesystem::path(MNPP_INSTALL_DATA_DIR) /
                              "open_class.tsv")) {
    return MNPP_INSTALL_DATA_DIR;
  }
#endif
#ifdef MNPP_BUILD_DATA_DIR
  return MNPP_BUILD_DATA_DIR;
#else
  return "data";
#endif
}

const Lexicon& Lexicon::Default() {
  static const Lexicon lexicon = Load(DefaultDataDir());
  return lexicon;
}

std::optional<PosTag> Lexicon::ClosedClass(std::string_view lower) const {
  auto it = closed_.find(std::string(lower));
  if (it == closed_.end()) return std::nullopt;
  return it->second;
}

std::optional<PosTag> Lexicon::OpenClass(std::string_view lower) const {
  auto it = open_.find(std::string(lower));
  if (it == open_.end()) return std::nullopt;
  return it->second;
}

bool Lexicon::IsAbbreviation(std::string_view word) const {
  return abbreviations_.count(std::string(word)) > 0;
}

std::vector<TextSpan> SplitSentenceSpans(std::string_view text,
                                         const Lexicon& lexicon) {
  std::vector<TextSpan> spans;
  const size_t n = text.size();
  size_t start = 0;
  size_t i = 0;
  while (i < n) {
    const char c = text[i];
    if (c == '\n') {
      size_t j = i + 1;
      while (j < n && (text[j] == ' ' || text[j] == '\t' || text[j] == '\r')) ++j;
      if (j < n && text[j] == '\n') {
        AddSpan(text, start, i, &spans);
        start = j + 1;
        i = j + 1;
        continue;
      }
      ++i;
      continue;
    }
    if (!IsSentenceFinal(c)) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < n && IsSentenceFinal(text[j])) ++j;
    const bool single_period = (j == i + 1 && c == '.');
    while (j < n && IsCloser(text[j])) ++j;
    const size_t end = j;
    bool boundary = false;
    if (j == n) {
      boundary = true;
    } else if (IsAsciiSpace(text[j])) {
      size_t k = j;
      while (k < n && IsAsciiSpace(text[k])) ++k;
      if (k == n) {
        boundary = true;
      } else {
        while (k < n && IsOpener(text[k])) ++k;
        boundary = IsUpperAt(text, k);
      }
    }
    if (boundary && single_period) {
      size_t ws = i;
      while (ws > start && !IsAsciiSpace(text[ws - 1])) --ws;
      while (ws < i && IsOpener(text[ws])) ++ws;
      if (KeepsPeriod(text.substr(ws, i + 1 - ws), lexicon)) boundary = false;
    }
    if (boundary) {
      AddSpan(text, start, end, &spans);
      start = end;
    }
    i = j;
  }
  AddSpan(text, start, n, &spans);
  return spans;
}

std::vector<std::string> SplitSentences(std::string_view text,
                                        const Lexicon& lexicon) {
  std::vector<std::string> out;
  for (const TextSpan& span : SplitSentenceSpans(text, lexicon)) {
    out.emplace_back(text.substr(span.begin, span.end - span.begin));
  }
  return out;
}

std::vector<Token> Tokenize(std::string_view sentence, const Lexicon& lexicon) {
  std::vector<Token> out;
  const size_t n = sentence.size();
  size_t i = 0;
  while (i < n) {
    while (i < n && IsAsciiSpace(sentence[i])) ++i;
    if (i == n) break;
    size_t s = i;
    size_t e = i;
    while (e < n && !IsAsciiSpace(sentence[e])) ++e;
    i = e;

    while (s < e && IsPunctByte(sentence[s])) {
      out.push_back(MakeToken(sentence, s, s + 1));
      ++s;
    }
    if (s == e) continue;
    size_t core_end = e;
    while (core_end > s && IsPunctByte(sentence[core_end - 1])) --core_end;
    if (core_end < e && sentence[core_end] == '.' &&
        KeepsPeriod(sentence.substr(s, core_end + 1 - s), lexicon)) {
      ++core_end;
    }
    EmitWord(sentence, s, core_end, &out);
    for (size_t p = core_end; p < e; ++p) out.push_back(MakeToken(sentence, p, p + 1));
  }
  return out;
}

std::vector<Token> TagPos(std::vector<Token> tokens, const Lexicon& lexicon) {
  size_t first_word = tokens.size();
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (!AllPunct(tokens[i].surface)) {
      first_word = i;
      break;
    }
  }
  for (size_t i = 0; i < tokens.size(); ++i) {
    Token& tok = tokens[i];
    if (AllPunct(tok.surface)) {
      tok.pos = PosTag::kPunct;
    } else if (auto closed = lexicon.ClosedClass(tok.lower)) {
      tok.pos = *closed;
    } else if (i != first_word && IsUpperAt(tok.surface, 0)) {
      tok.pos = PosTag::kPropn;
    } else if (IsNumeric(tok.lower)) {
      tok.pos = PosTag::kNum;
    } else if (auto open = lexicon.OpenClass(tok.lower)) {
      tok.pos = *open;
    } else if (EndsWith(tok.lower, "ly")) {
      tok.pos = PosTag::kOther;
    } else if (EndsWith(tok.lower, "ing") || EndsWith(tok.lower, "ed")) {
      tok.pos = PosTag::kVerb;
    } else if (EndsWith(tok.lower, "tion") || EndsWith(tok.lower, "ness") ||
               EndsWith(tok.lower, "ment")) {
      tok.pos = PosTag::kNoun;
    } else {
      tok.pos = PosTag::kNoun;
    }
  }
  return tokens;
}

std::vector<NounPhrase> ChunkNounPhrases(std::span<const Token> tokens,
                                         std::string_view sentence) {
  std::vector<NounPhrase> out;
  const size_t n = tokens.size();
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    if (j < n && tokens[j].pos == PosTag::kDet) ++j;
    if (j < n && tokens[j].pos == PosTag::kNum) ++j;
    while (j < n && tokens[j].pos == PosTag::kAdj) ++j;
    const size_t head_start = j;
    while (j < n && (tokens[j].pos == PosTag::kNoun || tokens[j].pos == PosTag::kPropn)) {
      ++j;
    }
    if (j == head_start) {
      ++i;
      continue;
    }
    NounPhrase np;
    np.tok_start = i;
    np.tok_end = j;
    np.char_start = tokens[i].char_start;
    np.char_end = tokens[j - 1].char_end;
    np.text = std::string(sentence.substr(np.char_start, np.char_end - np.char_start));
    np.norm = CollapseWhitespace(ToLower(np.text));
    out.push_back(std::move(np));
    i = j;
  }
  return out;
}

AnalyzedSentence Analyze(std::string_view sentence, const Lexicon& lexicon) {
  AnalyzedSentence result;
  result.tokens = TagPos(Tokenize(sentence, lexicon), lexicon);
  result.noun_phrases = ChunkNounPhrases(result.tokens, sentence);
  return result;
}

}  // namespace mnpp
