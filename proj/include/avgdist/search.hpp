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
#include <optional>
#include <vector>

#include "avgdist/codes.hpp"
#include "avgdist/rational.hpp"

namespace avgdist {

struct SearchConfig {
  int n = 0;
  std::uint64_t M = 0;
  bool fix_zero = true;   // translation invariance: 0 is always a codeword
  bool lex_prune = true;  // enumerate increasing word sequences only
  bool all_minimizers = false;  // keep ties (prune only on strictly worse)
  std::optional<std::uint64_t> node_budget;
  int threads = 0;  // 0: OpenMP default
  bool allow_large = false;  // lift the n <= 5 advisory limit
};

struct SearchResult {
  Rational beta;
  // Minimizers in the canonical form enumerated. With all_minimizers every
  // minimizer of that form is listed, sorted.
  std::vector<Code> minimizers;
  std::uint64_t nodes = 0;
};

// Thrown when node_budget is exhausted; carries the best incumbent so far.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t nodes, std::optional<Rational> best, std::optional<Code> incumbent)
      : Error("search node budget exceeded after " + std::to_string(nodes) + " nodes"),
        nodes_(nodes),
        best_(std::move(best)),
        incumbent_(std::move(incumbent)) {}

  std::uint64_t nodes() const { return nodes_; }
  const std::optional<Rational>& best() const { return best_; }
  const std::optional<Code>& incumbent() const { return incumbent_; }

 private:
  std::uint64_t nodes_;
  std::optional<Rational> best_;
  std::optional<Code> incumbent_;
};

// Exact beta(n, M) by branch and bound. The tree is split across OpenMP
// threads at the first branching level with a shared atomic incumbent.
// Throws DomainError outside 1 <= M <= 2^n, for n > 31, and for n > 5 unless
// allow_large is set.
SearchResult brute_force_beta(const SearchConfig& cfg);

// Reference: plain enumeration of every code containing 0 (or every code,
// without fix_zero), no pruning, single thread.
SearchResult brute_force_beta_serial(const SearchConfig& cfg);

// {0} + {e_i} + {e_1 + e_j : j >= 2}; 2n words, average distance
// 5/2 - (4n - 2)/n^2. Requires n >= 2.
Code construct_two_n(int n);
Rational two_n_average_distance(int n);  // the closed form above

// All C(n, w) words of weight w. Throws DomainError when C(n, w) > max_words.
Code construct_constant_weight(int n, int w, std::uint64_t max_words = std::uint64_t{1} << 20);

}  // namespace avgdist
