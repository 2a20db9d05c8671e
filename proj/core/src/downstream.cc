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

#include "mnpp/downstream.h"

#include <algorithm>
#include <memory>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "mnpp/common.h"
#include "mnpp/difficulty.h"
#include "mnpp/records.h"
#include "mnpp/text_analysis.h"

namespace mnpp {

using nlohmann::json;

namespace {

void CheckOptions(const std::string& a, const std::string& b) {
  if (a.empty() || b.empty()) throw Error("empty option");
  if (a == b) throw Error("option_a and option_b are identical");
}

std::string CapitalizeFirst(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::string LowercaseFirst(std::string s) {
  const bool pronoun_i = s.size() >= 2 && s[0] == 'I' && (s[1] == ' ' || s[1] == '\'');
  if (!pronoun_i && !s.empty() && s[0] >= 'A' && s[0] <= 'Z') {
    s[0] = static_cast<char>(s[0] - 'A' + 'a');
  }
  return s;
}

std::string StringField(const json& j, std::initializer_list<const char*> keys) {
  for (const char* key : keys) {
    auto it = j.find(key);
    if (it == j.end()) continue;
    if (it->is_string()) return it->get<std::string>();
    if (it->is_number_integer()) return std::to_string(it->get<long long>());
    throw Error(std::string("field \"") + key + "\" must be a string");
  }
  throw Error(std::string("missing field \"") + *keys.begin() + "\"");
}

size_t IndexField(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number_unsigned()) {
    throw Error(std::string("field \"") + key + "\" must be a non-negative integer");
  }
  return it->get<size_t>();
}

// Accepts 0|1 (zero_based) or 1|2, as numbers or strings; absent, null or
// "" means unlabeled.
std::optional<int> AnswerField(const json& j, bool zero_based) {
  auto it = j.find("answer");
  if (it == j.end() || it->is_null()) return std::nullopt;
  long long value;
  if (it->is_string()) {
    const std::string s = it->get<std::string>();
    if (s.empty()) return std::nullopt;
    if (s.size() != 1 || s[0] < '0' || s[0] > '9') throw Error("invalid answer \"" + s + "\"");
    value = s[0] - '0';
  } else if (it->is_number_integer()) {
    value = it->get<long long>();
  } else {
    throw Error("invalid answer type");
  }
  const long long lo = zero_based ? 0 : 1;
  if (value != lo && value != lo + 1) throw Error("answer out of range");
  return static_cast<int>(value);
}

}  // namespace

std::optional<Adapter> ParseAdapter(std::string_view name) {
  if (name == "mnpp") return Adapter::kMnpp;
  if (name == "placeholder") return Adapter::kPlaceholder;
  if (name == "pronoun") return Adapter::kPronoun;
  if (name == "copa") return Adapter::kCopa;
  return std::nullopt;
}

std::string_view AdapterName(Adapter adapter) {
  switch (adapter) {
    case Adapter::kMnpp: return "mnpp";
    case Adapter::kPlaceholder: return "placeholder";
    case Adapter::kPronoun: return "pronoun";
    case Adapter::kCopa: return "copa";
  }
  return "mnpp";
}

BinaryChoiceExample FromPlaceholderRecord(std::string_view sentence, std::string option1,
                                          std::string option2, std::optional<int> answer,
                                          std::string id, std::string dataset_tag) {
  const size_t blank = sentence.find('_');
  if (blank == std::string_view::npos) throw Error("sentence has no \"_\" placeholder");
  if (sentence.find('_', blank + 1) != std::string_view::npos) {
    throw Error("sentence has more than one \"_\" placeholder");
  }
  if (answer && *answer != 1 && *answer != 2) throw Error("answer must be 1 or 2");
  CheckOptions(option1, option2);
  BinaryChoiceExample ex;
  ex.example_id = std::move(id);
  ex.prefix = std::string(sentence.substr(0, blank));
  ex.suffix = std::string(sentence.substr(blank + 1));
  ex.option_a = std::move(option1);
  ex.option_b = std::move(option2);
  if (answer) ex.answer = *answer - 1;
  ex.dataset_tag = std::move(dataset_tag);
  return ex;
}

BinaryChoiceExample FromPronounRecord(std::string_view sentence, size_t start, size_t end,
                                      const std::array<std::string, 2>& candidates,
                                      std::optional<int> answer, std::string id,
                                      std::string dataset_tag) {
  if (start >= end || end > sentence.size()) throw Error("pronoun span out of bounds");
  const auto tokens = Tokenize(sentence);
  const bool on_token = std::any_of(tokens.begin(), tokens.end(), [&](const Token& t) {
    return t.char_start == start && t.char_end == end;
  });
  if (!on_token) throw Error("pronoun span does not match a token");
  if (answer && *answer != 0 && *answer != 1) throw Error("answer must be 0 or 1");
  CheckOptions(candidates[0], candidates[1]);

  bool initial = true;
  for (size_t i = 0; i < start; ++i) {
    const char c = sentence[i];
    if (!IsAsciiSpace(c) && c != '"' && c != '\'' && c != '(') {
      initial = false;
      break;
    }
  }
  const bool capitalize = initial && IsUpperAt(sentence, start);

  BinaryChoiceExample ex;
  ex.example_id = std::move(id);
  ex.prefix = std::string(sentence.substr(0, start));
  ex.suffix = std::string(sentence.substr(end));
  ex.option_a = capitalize ? CapitalizeFirst(candidates[0]) : candidates[0];
  ex.option_b = capitalize ? CapitalizeFirst(candidates[1]) : candidates[1];
  ex.answer = answer;
  ex.dataset_tag = std::move(dataset_tag);
  return ex;
}

BinaryChoiceExample FromCopaRecord(std::string_view premise, std::string_view choice1,
                                   std::string_view choice2, std::string_view question,
                                   std::optional<int> answer, std::string id,
                                   std::string dataset_tag) {
  std::string_view connective;
  if (question == "cause") {
    connective = " because ";
  } else if (question == "effect") {
    connective = " so ";
  } else {
    throw Error("question must be \"cause\" or \"effect\"");
  }
  if (answer && *answer != 0 && *answer != 1) throw Error("answer must be 0 or 1");
  std::string head(Trim(premise));
  while (!head.empty() && (head.back() == '.' || head.back() == '!')) head.pop_back();
  if (head.empty()) throw Error("empty premise");

  BinaryChoiceExample ex;
  ex.example_id = std::move(id);
  ex.prefix = head + std::string(connective);
  ex.option_a = LowercaseFirst(std::string(Trim(choice1)));
  ex.option_b = LowercaseFirst(std::string(Trim(choice2)));
  CheckOptions(ex.option_a, ex.option_b);
  ex.answer = answer;
  ex.dataset_tag = std::move(dataset_tag);
  return ex;
}

BinaryChoiceExample FromMnppInstance(const MnppInstance& inst) {
  CheckOptions(inst.candidate_a, inst.candidate_b);
  BinaryChoiceExample ex;
  ex.example_id = inst.instance_id;
  ex.prefix = inst.first_half;
  ex.suffix = inst.second_half;
  ex.option_a = inst.candidate_a;
  ex.option_b = inst.candidate_b;
  ex.answer = inst.label;
  ex.dataset_tag = inst.source_tag;
  if (inst.difficulty) ex.group = std::string(BucketName(inst.difficulty->bucket));
  return ex;
}

ConversionResult ConvertFile(const std::filesystem::path& path, Adapter adapter,
                             std::string_view dataset_tag) {
  ConversionResult result;
  const std::string tag(dataset_tag.empty() ? AdapterName(adapter) : dataset_tag);
  ForEachLine(path, [&](std::string_view line, size_t line_no) {
    try {
      if (adapter == Adapter::kMnpp) {
        BinaryChoiceExample ex = FromMnppInstance(InstanceFromJson(line));
        if (!dataset_tag.empty()) ex.dataset_tag = tag;
        result.examples.push_back(std::move(ex));
        return;
      }
      json j;
      try {
        j = json::parse(line);
      } catch (const json::exception&) {
        throw Error("invalid JSON");
      }
      if (!j.is_object()) throw Error("record is not a JSON object");
      switch (adapter) {
        case Adapter::kPlaceholder:
          result.examples.push_back(FromPlaceholderRecord(
              StringField(j, {"sentence_with_blank", "sentence"}),
              StringField(j, {"option1"}), StringField(j, {"option2"}),
              AnswerField(j, /*zero_based=*/false), StringField(j, {"id", "qID"}), tag));
          break;
        case Adapter::kPronoun: {
          auto it = j.find("candidates");
          if (it == j.end() || !it->is_array() || it->size() != 2 ||
              !(*it)[0].is_string() || !(*it)[1].is_string()) {
            throw Error("\"candidates\" must be an array of exactly two strings");
          }
          result.examples.push_back(FromPronounRecord(
              StringField(j, {"sentence"}), IndexField(j, "pronoun_char_start"),
              IndexField(j, "pronoun_char_end"),
              {(*it)[0].get<std::string>(), (*it)[1].get<std::string>()},
              AnswerField(j, /*zero_based=*/true), StringField(j, {"id"}), tag));
          break;
        }
        case Adapter::kCopa:
          result.examples.push_back(FromCopaRecord(
              StringField(j, {"premise"}), StringField(j, {"choice1"}),
              StringField(j, {"choice2"}), StringField(j, {"question"}),
              AnswerField(j, /*zero_based=*/true), StringField(j, {"id"}), tag));
          break;
        case Adapter::kMnpp:
          break;
      }
    } catch (const Error& e) {
      result.errors++;
      result.messages.push_back(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  });
  return result;
}

std::string ToJsonLine(const BinaryChoiceExample& ex) {
  json j = {
      {"example_id", ex.example_id},
      {"prefix", ex.prefix},
      {"suffix", ex.suffix},
      {"option_a", ex.option_a},
      {"option_b", ex.option_b},
      {"answer", ex.answer ? json(*ex.answer) : json()},
      {"dataset_tag", ex.dataset_tag},
  };
  if (ex.group) j["group"] = *ex.group;
  return j.dump();
}

Scorer MakeOracleScorer(std::span<const BinaryChoiceExample> examples) {
  auto gold = std::make_shared<std::unordered_set<std::string>>();
  for (const auto& ex : examples) {
    if (ex.answer) gold->insert(ex.Fill(*ex.answer));
  }
  return [gold](std::string_view prefix, std::string_view option, std::string_view suffix) {
    std::string fill;
    fill.reserve(prefix.size() + option.size() + suffix.size());
    fill.append(prefix).append(option).append(suffix);
    return gold->count(fill) ? 1.0 : 0.0;
  };
}

int Predict(const BinaryChoiceExample& ex, const Scorer& scorer, bool* tie) {
  const double a = scorer(ex.prefix, ex.option_a, ex.suffix);
  const double b = scorer(ex.prefix, ex.option_b, ex.suffix);
  if (tie) *tie = (a == b);
  return b > a ? 1 : 0;
}

EvalReport Evaluate(std::span<const BinaryChoiceExample> examples, const Scorer& scorer,
                    bool per_bucket) {
  EvalReport report;
  for (const auto& ex : examples) {
    if (!ex.answer) throw Error("unlabeled example in eval");
  }
  for (const auto& ex : examples) {
    if (report.dataset_tag.empty()) {
      report.dataset_tag = ex.dataset_tag;
    } else if (report.dataset_tag != ex.dataset_tag) {
      report.dataset_tag = "mixed";
    }
    bool tie = false;
    const int predicted = Predict(ex, scorer, &tie);
    const bool correct = predicted == *ex.answer;
    report.n++;
    report.n_correct += correct;
    report.ties += tie;
    report.confusion[*ex.answer][predicted]++;
    if (per_bucket) {
      GroupStats& g = report.per_bucket[ex.group.value_or("ungrouped")];
      g.n++;
      g.n_correct += correct;
    }
  }
  if (report.n > 0) {
    report.accuracy = static_cast<double>(report.n_correct) / static_cast<double>(report.n);
  }
  for (auto& [name, g] : report.per_bucket) {
    g.accuracy = static_cast<double>(g.n_correct) / static_cast<double>(g.n);
  }
  return report;
}

std::string EvalReport::ToJson() const {
  json j = {
      {"dataset_tag", dataset_tag},
      {"n", n},
      {"n_correct", n_correct},
      {"accuracy", accuracy},
      {"ties", ties},
      {"confusion",
       {{"gold0_pred0", confusion[0][0]},
        {"gold0_pred1", confusion[0][1]},
        {"gold1_pred0", confusion[1][0]},
        {"gold1_pred1", confusion[1][1]}}},
  };
  if (!per_bucket.empty()) {
    json groups = json::object();
    for (const auto& [name, g] : per_bucket) {
      groups[name] = {{"n", g.n}, {"n_correct", g.n_correct}, {"accuracy", g.accuracy}};
    }
    j["per_bucket"] = groups;
  }
  return j.dump();
}

std::string PredictionsCsv(std::span<const BinaryChoiceExample> examples, const Scorer& scorer) {
  std::string out = "example_id,prediction\n";
  for (const auto& ex : examples) {
    out += ex.example_id;
    out += ',';
    out += std::to_string(Predict(ex, scorer));
    out += '\n';
  }
  return out;
}

}  // namespace mnpp
