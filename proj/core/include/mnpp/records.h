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

// Newline-delimited JSON records. Objects are written with keys in sorted
// order and numbers in shortest round-trip form, so equal records always
// serialize to equal bytes.

#ifndef MNPP_RECORDS_H_
#define MNPP_RECORDS_H_

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mnpp/corpus_ingest.h"
#include "mnpp/instance_gen.h"

namespace mnpp {

// Without a trailing newline.
std::string ToJsonLine(const CleanSentence& sentence);
std::string ToJsonLine(const MnppInstance& instance);

CleanSentence CleanSentenceFromJson(std::string_view line);
// Accepts the optional "similarity"/"bucket" fields written after bucketing.
MnppInstance InstanceFromJson(std::string_view line);

// Calls fn(line, line_no) for every non-blank line.
void ForEachLine(const std::filesystem::path& path,
                 const std::function<void(std::string_view, size_t)>& fn);

std::vector<MnppInstance> ReadInstances(const std::filesystem::path& path);
void WriteInstances(const std::filesystem::path& path, const std::vector<MnppInstance>& instances);

// Writes `contents` to `path`, throwing with path context on failure.
void WriteFile(const std::filesystem::path& path, std::string_view contents);
std::string ReadFile(const std::filesystem::path& path);

}  // namespace mnpp

#endif  // MNPP_RECORDS_H_
