// Copyright 2026 The avgdist Authors
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

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "avgdist/bound_result.hpp"

namespace avgdist::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;         // bad flags or arguments, library errors
inline constexpr int kExitVerification = 2;  // counterexamples or an invalid certificate
inline constexpr int kExitIncomplete = 3;    // search node budget exhausted

// One row of bound output.
struct OutputRecord {
  int n = 0;
  std::uint64_t M = 0;
  std::string lower_exact;    // "p/q"
  std::string lower_decimal;  // 12 significant digits, approximate
  std::optional<std::string> upper_exact;
  std::vector<std::string> provenance;
};

OutputRecord make_record(const BoundResult& lower, const std::optional<BoundResult>& upper);

// Entry point behind the avgdist executable: args excludes the program name.
// Results go to `out`, diagnostics and help on errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace avgdist::cli
