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

#include "avgdist/codes.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include "avgdist/krawtchouk.hpp"

namespace avgdist {

namespace {

std::size_t blocks_for(int n) { return (static_cast<std::size_t>(n) + 63) / 64; }

int block_distance(const std::uint64_t* a, const std::uint64_t* b, std::size_t blocks) {
  int d = 0;
  for (std::size_t k = 0; k < blocks; ++k) d += std::popcount(a[k] ^ b[k]);
  return d;
}

}  // namespace

Code::Code(int n, std::size_t size, std::vector<std::uint64_t> data)
    : n_(n), blocks_(blocks_for(n)), size_(size), data_(std::move(data)) {
  check_distinct();
}

Code::Code(const std::vector<std::string>& words) {
  if (words.empty()) throw DomainError("a code needs at least one word");
  n_ = static_cast<int>(words.front().size());
  if (n_ == 0) throw DomainError("code words must be nonempty");
  blocks_ = blocks_for(n_);
  size_ = words.size();
  data_.assign(size_ * blocks_, 0);
  for (std::size_t i = 0; i < size_; ++i) {
    const auto& w = words[i];
    if (static_cast<int>(w.size()) != n_) {
      throw DomainError("word " + std::to_string(i + 1) + " has length " +
                        std::to_string(w.size()) + ", expected " + std::to_string(n_));
    }
    for (int p = 0; p < n_; ++p) {
      if (w[p] == '1') {
        data_[i * blocks_ + static_cast<std::size_t>(p) / 64] |= std::uint64_t{1} << (p % 64);
      } else if (w[p] != '0') {
        throw DomainError("word " + std::to_string(i + 1) + " contains a character other than 0/1");
      }
    }
  }
  check_distinct();
}

Code Code::from_integers(int n, std::span<const std::uint64_t> words) {
  if (n < 1 || n > 64) throw DomainError("from_integers needs 1 <= n <= 64");
  if (words.empty()) throw DomainError("a code needs at least one word");
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  for (auto w : words) {
    if ((w & ~mask) != 0) throw DomainError("word has bits beyond length n");
  }
  return Code(n, words.size(), std::vector<std::uint64_t>(words.begin(), words.end()));
}

void Code::check_distinct() const {
  std::vector<std::size_t> order(size_);
  for (std::size_t i = 0; i < size_; ++i) order[i] = i;
  auto key = [&](std::size_t i) { return blocks(i); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto x = key(a), y = key(b);
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    auto x = key(order[k - 1]), y = key(order[k]);
    if (std::equal(x.begin(), x.end(), y.begin())) {
      throw DomainError("duplicate word " + word(order[k]));
    }
  }
}

int Code::distance(std::size_t i, std::size_t j) const {
  return block_distance(data_.data() + i * blocks_, data_.data() + j * blocks_, blocks_);
}

int Code::weight(std::size_t i) const {
  int w = 0;
  for (auto b : blocks(i)) w += std::popcount(b);
  return w;
}

std::string Code::word(std::size_t i) const {
  std::string s(static_cast<std::size_t>(n_), '0');
  const auto b = blocks(i);
  for (int p = 0; p < n_; ++p) {
    if ((b[static_cast<std::size_t>(p) / 64] >> (p % 64)) & 1U) s[p] = '1';
  }
  return s;
}

Code Code::translated(std::string_view t) const {
  if (static_cast<int>(t.size()) != n_) throw DomainError("translation word has wrong length");
  std::vector<std::uint64_t> shift(blocks_, 0);
  for (int p = 0; p < n_; ++p) {
    if (t[p] == '1') {
      shift[static_cast<std::size_t>(p) / 64] |= std::uint64_t{1} << (p % 64);
    } else if (t[p] != '0') {
      throw DomainError("translation word contains a character other than 0/1");
    }
  }
  auto data = data_;
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t k = 0; k < blocks_; ++k) data[i * blocks_ + k] ^= shift[k];
  }
  return Code(n_, size_, std::move(data));
}

std::vector<std::uint64_t> distance_histogram_serial(const Code& code) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(code.n()) + 1, 0);
  const std::size_t m = code.size();
  counts[0] = m;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) counts[code.distance(i, j)] += 2;
  }
  return counts;
}

std::vector<std::uint64_t> distance_histogram(const Code& code) {
  const std::size_t bins = static_cast<std::size_t>(code.n()) + 1;
  const auto m = static_cast<std::int64_t>(code.size());
  std::vector<std::uint64_t> counts(bins, 0);
  counts[0] = static_cast<std::uint64_t>(m);

#pragma omp parallel
  {
    std::vector<std::uint64_t> local(bins, 0);
#pragma omp for schedule(dynamic, 64) nowait
    for (std::int64_t i = 0; i < m; ++i) {
      for (std::int64_t j = i + 1; j < m; ++j) {
        local[code.distance(static_cast<std::size_t>(i), static_cast<std::size_t>(j))] += 2;
      }
    }
#pragma omp critical(avgdist_histogram_merge)
    for (std::size_t b = 0; b < bins; ++b) counts[b] += local[b];
  }
  return counts;
}

DistributionPair distance_distribution(const Code& code) {
  const int n = code.n();
  const auto counts = distance_histogram(code);
  DistributionPair dist;
  dist.n = n;
  dist.M = code.size();
  const Integer m(static_cast<unsigned long>(code.size()));
  dist.A.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    dist.A[i] = make_rational(Integer(static_cast<unsigned long>(counts[i])), m);
  }
  // B_k = M^-2 sum_i P_k(i) count_i; only distances that occur contribute.
  std::vector<std::vector<Integer>> columns(counts.size());
  for (int i = 0; i <= n; ++i) {
    if (counts[i] != 0) columns[i] = kraw_column(n, i);
  }
  const Integer m2 = m * m;
  dist.B.resize(counts.size());
  for (int k = 0; k <= n; ++k) {
    Integer acc = 0;
    for (int i = 0; i <= n; ++i) {
      if (counts[i] != 0) acc += columns[i][k] * Integer(static_cast<unsigned long>(counts[i]));
    }
    dist.B[k] = make_rational(acc, m2);
  }
  return dist;
}

Rational average_distance(const Code& code) {
  const auto counts = distance_histogram(code);
  Integer total = 0;
  for (std::size_t i = 1; i < counts.size(); ++i) {
    total += Integer(static_cast<unsigned long>(counts[i])) * static_cast<unsigned long>(i);
  }
  const Integer m(static_cast<unsigned long>(code.size()));
  return make_rational(total, m * m);
}

Rational average_distance_from_dual(const DistributionPair& dist) {
  return (Rational(dist.n) - dist.B.at(1)) / 2;
}

std::vector<std::string> distribution_violations(const DistributionPair& dist) {
  std::vector<std::string> out;
  const int n = dist.n;
  const Rational m(Integer(static_cast<unsigned long>(dist.M)));
  if (dist.A.size() != static_cast<std::size_t>(n) + 1 ||
      dist.B.size() != static_cast<std::size_t>(n) + 1) {
    out.push_back("distribution arrays must have n+1 entries");
    return out;
  }
  if (dist.A[0] != 1) out.push_back("A_0 != 1");
  if (dist.B[0] != 1) out.push_back("B_0 != 1");
  Rational sum_a = 0, sum_b = 0;
  for (int i = 0; i <= n; ++i) {
    sum_a += dist.A[i];
    sum_b += dist.B[i];
    if (sgn(dist.A[i]) < 0) out.push_back("A_" + std::to_string(i) + " < 0");
    if (sgn(dist.B[i]) < 0) out.push_back("B_" + std::to_string(i) + " < 0 (Delsarte)");
  }
  if (sum_a != m) out.push_back("sum of A != M");
  const Rational full(pow2(static_cast<unsigned>(n)));
  if (sum_b != full / m) out.push_back("sum of B != 2^n/M");
  // sum_k P_j(k) B_k = (2^n/M) A_j
  for (int j = 0; j <= n; ++j) {
    Rational lhs = 0;
    for (int k = 0; k <= n; ++k) lhs += Rational(kraw_value(n, j, k)) * dist.B[k];
    if (lhs != full / m * dist.A[j]) {
      out.push_back("inverse transform fails at j=" + std::to_string(j));
    }
  }
  return out;
}

Code parse_code(std::string_view text) {
  std::vector<std::string> words;
  std::size_t expected = 0;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::pair<std::string, std::size_t>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t");
    std::string w = line.substr(first, last - first + 1);
    if (w.front() == '#') continue;
    if (w.find_first_not_of("01") != std::string::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": word must contain only '0' and '1'");
    }
    if (words.empty()) {
      expected = w.size();
    } else if (w.size() != expected) {
      throw ParseError("line " + std::to_string(line_no) + ": length " + std::to_string(w.size()) +
                       " differs from " + std::to_string(expected));
    }
    seen.emplace_back(w, line_no);
    words.push_back(std::move(w));
  }
  if (words.empty()) throw ParseError("no code words found");
  std::sort(seen.begin(), seen.end());
  for (std::size_t k = 1; k < seen.size(); ++k) {
    if (seen[k].first == seen[k - 1].first) {
      throw ParseError("line " + std::to_string(seen[k].second) + ": duplicate word " +
                       seen[k].first + " (first seen on line " +
                       std::to_string(seen[k - 1].second) + ")");
    }
  }
  return Code(words);
}

Code read_code_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_code(buf.str());
}

std::string format_code(const Code& code) {
  std::string out;
  out.reserve(code.size() * (static_cast<std::size_t>(code.n()) + 1));
  for (std::size_t i = 0; i < code.size(); ++i) {
    out += code.word(i);
    out += '\n';
  }
  return out;
}

}  // namespace avgdist
