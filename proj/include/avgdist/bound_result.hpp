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

#include <cstdint>
#include <string>
#include <vector>

#include "avgdist/rational.hpp"

namespace avgdist {

enum class Direction { Lower, Upper };

// A bound on beta(n, M) with the chain of tags that produced it.
struct BoundResult {
  int n = 0;
  std::uint64_t M = 0;
  Direction direction = Direction::Lower;
  Rational value;
  std::vector<std::string> provenance;
};

// Throws DomainError unless n >= 1 and 1 <= M <= 2^n.
inline void require_code_size(int n, std::uint64_t M) {
  if (n < 1) throw DomainError("code length n must be positive");
  if (M == 0 || (n < 64 && M > (std::uint64_t{1} << n))) {
    throw DomainError("code size M=" + std::to_string(M) + " outside [1, 2^" +
                      std::to_string(n) + "]");
  }
}

}  // namespace avgdist
