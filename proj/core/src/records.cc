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

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mnpp/common.h"
#include "mnpp/difficulty.h"

namespace mnpp {

using nlohmann::json;

namespace {

json Parse(std::string_view line) {
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    throw Error(std::string("invalid JSON record: ") + e.what());
  }
}

template <typename T>
T Field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(std::string("record is missing field \"") + key + "\"");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw Error(std::string("record field \"") + key + "\" has the wrong type");
  }
}

}  // namespace

std::string ToJsonLine(const CleanSentence& s) {
  json j = {
      {"doc_id", s.doc_id},
      {"sent_index", s.sent_index},
      {"text", s.text},
      {"source_tag", s.source_tag},
  };
  return j.dump();
}

std::string ToJsonLine(const MnppInstance& inst) {
  json j = {
      {"instance_id", inst.instance_id},
      {"doc_id", inst.doc_id},
      {"source_tag", inst.source_tag},
      {"sentence", inst.sentence},
      {"first_half", inst.first_half},
      {"second_half", inst.second_half},
      {"candidate_a", inst.candidate_a},
      {"candidate_b", inst.candidate_b},
      {"label", inst.label},
      {"masked_norm", inst.masked_norm},
      {"distractor_norm", inst.distractor_norm},
      {"mask_char_start", inst.mask_char_start},
      {"mask_char_end", inst.mask_char_end},
  };
  if (inst.difficulty) {
    j["similarity"] = inst.difficulty->similarity ? json(*inst.difficulty->similarity) : json();
    j["bucket"] = BucketName(inst.difficulty->bucket);
  }
  return j.dump();
}

CleanSentence CleanSentenceFromJson(std::string_view line) {
  const json j = Parse(line);
  return CleanSentence{Field<std::string>(j, "doc_id"), Field<size_t>(j, "sent_index"),
                       Field<std::string>(j, "text"), Field<std::string>(j, "source_tag")};
}

MnppInstance InstanceFromJson(std::string_view line) {
  const json j = Parse(line);
  MnppInstance inst;
  inst.instance_id = Field<std::string>(j, "instance_id");
  inst.doc_id = Field<std::string>(j, "doc_id");
  inst.source_tag = Field<std::string>(j, "source_tag");
  inst.sentence = Field<std::string>(j, "sentence");
  inst.first_half = Field<std::string>(j, "first_half");
  inst.second_half = Field<std::string>(j, "second_half");
  inst.candidate_a = Field<std::string>(j, "candidate_a");
  inst.candidate_b = Field<std::string>(j, "candidate_b");
  inst.label = Field<int>(j, "label");
  inst.masked_norm = Field<std::string>(j, "masked_norm");
  inst.distractor_norm = Field<std::string>(j, "distractor_norm");
  inst.mask_char_start = Field<size_t>(j, "mask_char_start");
  inst.mask_char_end = Field<size_t>(j, "mask_char_end");
  if (inst.label != 0 && inst.label != 1) throw Error("record label must be 0 or 1");
  if (j.contains("bucket")) {
    const auto bucket = ParseBucket(Field<std::string>(j, "bucket"));
    if (!bucket) throw Error("record field \"bucket\" must be easy, medium or hard");
    DifficultyAnnotation note;
    note.bucket = *bucket;
    if (j.contains("similarity") && !j["similarity"].is_null()) {
      note.similarity = Field<double>(j, "similarity");
    }
    inst.difficulty = note;
  }
  return inst;
}

void ForEachLine(const std::filesystem::path& path,
                 const std::function<void(std::string_view, size_t)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    fn(line, line_no);
  }
}

std::vector<MnppInstance> ReadInstances(const std::filesystem::path& path) {
  std::vector<MnppInstance> out;
  ForEachLine(path, [&](std::string_view line, size_t line_no) {
    try {
      out.push_back(InstanceFromJson(line));
    } catch (const Error& e) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  });
  return out;
}

void WriteInstances(const std::filesystem::path& path,
                    const std::vector<MnppInstance>& instances) {
  std::string buf;
  for (const auto& inst : instances) {
    buf += ToJsonLine(inst);
    buf += '\n';
  }
  WriteFile(path, buf);
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open for writing: " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) throw Error("write failed: " + path.string());
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace mnpp
