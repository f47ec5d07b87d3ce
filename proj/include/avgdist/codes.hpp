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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "avgdist/rational.hpp"

namespace avgdist {

// A binary code: M >= 1 distinct words of common length n.
//
// Words are packed into 64-bit blocks, so evaluation works for any n. Bit p of
// a word is the p-th character of its text form, counting from the left.
class Code {
 public:
  // Each word is a string over {0,1}; all the same length. Throws DomainError
  // on an empty set, ragged lengths, bad characters or duplicates.
  explicit Code(const std::vector<std::string>& words);

  // Words given as integers (bit p = position p). Requires 1 <= n <= 64.
  static Code from_integers(int n, std::span<const std::uint64_t> words);

  int n() const { return n_; }
  std::size_t size() const { return size_; }

  int distance(std::size_t i, std::size_t j) const;
  int weight(std::size_t i) const;
  std::string word(std::size_t i) const;
  std::span<const std::uint64_t> blocks(std::size_t i) const {
    return {data_.data() + i * blocks_, blocks_};
  }

  // C + t for a fixed word t of length n.
  Code translated(std::string_view t) const;

 private:
  Code(int n, std::size_t size, std::vector<std::uint64_t> data);
  void check_distinct() const;

  int n_ = 0;
  std::size_t blocks_ = 0;
  std::size_t size_ = 0;
  std::vector<std::uint64_t> data_;
};

// Distance and dual-distance distributions. A sums to M, B sums to 2^n/M,
// A_0 = B_0 = 1.
struct DistributionPair {
  int n = 0;
  std::uint64_t M = 0;
  std::vector<Rational> A;
  std::vector<Rational> B;
};

// counts[i] = number of ordered pairs (c, c') with d(c, c') = i.
// OpenMP over rows; distance_histogram_serial is the reference.
std::vector<std::uint64_t> distance_histogram(const Code& code);
std::vector<std::uint64_t> distance_histogram_serial(const Code& code);

DistributionPair distance_distribution(const Code& code);

// Sum of d(c,c') over ordered pairs divided by M^2.
Rational average_distance(const Code& code);

// (n - B_1) / 2.
Rational average_distance_from_dual(const DistributionPair& dist);

// Conditions a genuine code must satisfy: A_0 = B_0 = 1, sums, nonnegativity
// and the inverse transform. Empty when all hold.
std::vector<std::string> distribution_violations(const DistributionPair& dist);

// Text format: one word per line, '#' comments and blank lines ignored.
// Errors name the 1-based line number.
Code parse_code(std::string_view text);
Code read_code_file(const std::filesystem::path& path);
std::string format_code(const Code& code);

}  // namespace avgdist
