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
#include <map>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

#include "avgdist/bound_result.hpp"

namespace avgdist {

// Exact beta(n, M) for small M: 0 at M = 1, 1 at M = 4, 3/2 at M = 8 and
// 2((M-1)/M)^2 otherwise, whenever M <= n + 1.
std::optional<Rational> exact_small_M(int n, std::uint64_t M);

// Every closed-form lower bound whose guard holds at (n, M), each clamped
// below at 0 and tagged "closed:<name>".
std::vector<BoundResult> closed_form_lower(int n, std::uint64_t M);

// beta(n, 2^n - M) = n/2 - M^2/(2^n - M)^2 (n/2 - beta(n, M)).
// The map is increasing, so lower (upper) bounds transfer to lower (upper)
// bounds. Requires n < 64, 1 <= M <= 2^n - 1, known.value <= n/2.
BoundResult complement_transfer(int n, std::uint64_t M, const BoundResult& known);

enum class Rounding { Down, Up };

// beta(n, M+1) >= M^2/(M+1)^2 b + M n/(M+1)^2 (1 - sqrt(1 - 2b/n)).
// The square root is bracketed by rationals; Down returns a value at most
// the true one, Up at least, each within 1e-30. Requires 0 <= b <= n/2.
Rational recursive_xf(int n, std::uint64_t M, const Rational& b, Rounding rounding = Rounding::Down);

// beta(n, M+1) >= M^2/(M^2 - 1) b, exact. Requires M >= 2.
Rational recursive_monotone(int n, std::uint64_t M, const Rational& b);

struct BoundOptions {
  bool use_lp = true;
  int lp_max_n = 64;  // no LP calls above this length
  // At intermediate M' < M of the recursion sweep, lengths above this use
  // only the B-side (and odd) programs; the A-side program and the n+1
  // programs of the mod-4 variant then run at the requested M alone.
  int sweep_full_lp_max_n = 16;
  // The recursion sweep runs over 1..M; above this M it is skipped and only
  // direct bounds (plus the complement) are reported.
  std::uint64_t recursion_limit = std::uint64_t{1} << 16;
  // Constructions are evaluated through the codes module up to this size.
  std::uint64_t construction_max_words = 4096;
};

// Best lower / upper bounds with provenance. Results are memoized per
// (n, M); the engine is safe to share between threads.
class BoundEngine {
 public:
  explicit BoundEngine(BoundOptions options = {});

  // Maximum over the exact small-M value, closed forms, LP variants for M's
  // parity class, the complement of the best direct bound at 2^n - M, and
  // both recursions carried forward from every M' < M. Ties list every
  // achieving tag in priority order exact > lp > closed > complement >
  // recursion > trivial. Throws std::logic_error if a lower bound ever
  // exceeds a known upper bound.
  BoundResult best_lower(int n, std::uint64_t M);

  // Smallest known upper bound from exact values and the explicit
  // constructions (full space, (n, 2n) code, constant-weight codes) and
  // their complements; nullopt when none applies.
  std::optional<BoundResult> best_upper(int n, std::uint64_t M);

  // Every individual lower bound considered directly at (n, M).
  std::vector<BoundResult> direct_lower_candidates(int n, std::uint64_t M);

  const BoundOptions& options() const { return options_; }

 private:
  struct Lane {
    std::vector<BoundResult> core;  // index M-1: direct + recursion, no complement
    std::vector<BoundResult> best;  // index M-1: core + complement + recursion
  };

  std::vector<BoundResult> candidates(int n, std::uint64_t M, bool full_lp);
  BoundResult direct_lower(int n, std::uint64_t M, bool full_lp);
  void extend_lane(int n, Lane& lane, std::uint64_t M);
  std::optional<BoundResult> upper_direct(int n, std::uint64_t M);

  BoundOptions options_;
  std::recursive_mutex mu_;
  std::map<int, Lane> lanes_;
  std::map<std::tuple<int, std::uint64_t, bool>, BoundResult> direct_cache_;
  std::map<std::pair<int, std::uint64_t>, std::optional<BoundResult>> upper_cache_;
};

// Convenience wrappers over a fresh engine.
BoundResult best_lower(int n, std::uint64_t M, const BoundOptions& options = {});
std::optional<BoundResult> best_upper(int n, std::uint64_t M, const BoundOptions& options = {});

// Picks the larger (Lower) or smaller (Upper) value; on a tie merges the
// provenance lists in priority order without duplicates.
BoundResult combine(const BoundResult& a, const BoundResult& b);

}  // namespace avgdist
