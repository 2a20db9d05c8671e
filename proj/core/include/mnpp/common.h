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

#ifndef MNPP_COMMON_H_
#define MNPP_COMMON_H_

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mnpp {

inline constexpr std::string_view kToolVersion = "mnpp-forge 0.1.0";

// Every fatal condition in the library is reported as an Error whose message
// is a single line, so the CLI can forward it verbatim.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// UTF-8 and string helpers.

bool IsValidUtf8(std::string_view text);

// Decodes the code point starting at text[*pos] and advances *pos. Input must
// be valid UTF-8.
char32_t DecodeUtf8(std::string_view text, size_t* pos);
void AppendUtf8(char32_t cp, std::string* out);

// Number of code points in a valid UTF-8 string.
size_t CountCodePoints(std::string_view text);

bool IsAsciiSpace(char c);
std::string_view Trim(std::string_view text);

// Trims and replaces every run of whitespace with one space.
std::string CollapseWhitespace(std::string_view text);

// Lowercases ASCII and the Latin-1 / Latin Extended-A letters.
std::string ToLower(std::string_view text);

// True for ASCII letters and Latin letters in U+00C0..U+024F.
bool IsLetter(char32_t cp);
bool IsUpperLetter(char32_t cp);

// True if the code point starting at text[pos] is an uppercase letter.
bool IsUpperAt(std::string_view text, size_t pos);

// ---------------------------------------------------------------------------
// Hashing and seeded randomness. Every random decision in the pipeline is
// drawn from Rng streams derived from one global seed, and all draws go
// through code in this library rather than <random> distributions, whose
// output differs between standard library implementations.

// Lowercase hex SHA-256 digest.
std::string Sha256Hex(std::string_view data);

// First 8 bytes of SHA-256 as a big-endian integer.
uint64_t Hash64(std::string_view data);

// Named sub-seed: DeriveSeed(seed, "sampling"), DeriveSeed(seed, "shuffle").
uint64_t DeriveSeed(uint64_t seed, std::string_view name);

// splitmix64 generator.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t Next();

  // Uniform integer in [0, bound); bound > 0. Unbiased (rejection sampling).
  uint64_t Below(uint64_t bound);

  // Uniform double in (0, 1].
  double UnitOpen();

  template <typename Container>
  void Shuffle(Container& items) {
    for (size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[Below(i)]);
    }
  }

 private:
  uint64_t state_;
};

// ---------------------------------------------------------------------------

// Runs fn(i) for i in [0, n) on up to `jobs` threads (0 = hardware
// concurrency). Callers write results into per-index slots, so the output
// never depends on `jobs`. The first exception thrown by fn is rethrown.
void ParallelFor(size_t n, unsigned jobs, const std::function<void(size_t)>& fn);

unsigned DefaultJobs();

// Shortest decimal representation that round-trips to the same double.
std::string FormatDouble(double value);

}  // namespace mnpp

#endif  // MNPP_COMMON_H_
