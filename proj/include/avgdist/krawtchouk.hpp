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

// Binary Krawtchouk polynomials P_k^n on the grid {0..n}, in exact arithmetic.
//
//   P_k^n(x) = sum_j (-1)^j C(x,j) C(n-x,k-j)
//
// Values at integer points are integers. Evaluation goes through the
// three-term recurrence in k,
//
//   (k+1) P_{k+1}(x) = (n-2x) P_k(x) - (n-k+1) P_{k-1}(x),
//
// with a per-n table cache; the definitional sum is kept as
// kraw_value_reference for cross-checking.

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "avgdist/rational.hpp"

namespace avgdist {

// C(n,k); zero when k < 0 or k > n. Rows of Pascal's triangle are cached.
Integer binomial(int n, int k);
std::shared_ptr<const std::vector<Integer>> pascal_row(int n);

// Full (n+1)x(n+1) table of P_k^n(x).
class KrawTable {
 public:
  explicit KrawTable(int n);

  int n() const { return n_; }
  const Integer& at(int k, int x) const {
    return values_[static_cast<std::size_t>(k) * stride_ + static_cast<std::size_t>(x)];
  }

 private:
  int n_;
  std::size_t stride_;
  std::vector<Integer> values_;
};

// Memoized for n <= kKrawTableCacheMaxN; larger tables are built on demand
// and not retained.
inline constexpr int kKrawTableCacheMaxN = 160;
std::shared_ptr<const KrawTable> kraw_table(int n);

// P_k^n(x). Throws DomainError unless n >= 0 and 0 <= k,x <= n.
Integer kraw_value(int n, int k, int x);

// Definitional sum, no caching.
Integer kraw_value_reference(int n, int k, int x);

// P_k^n(0) = C(n,k).
Integer kraw_value_at_zero(int n, int k);

// P_0^n(x), ..., P_n^n(x) by the recurrence, O(n) big-integer operations.
std::vector<Integer> kraw_column(int n, int x);

// A polynomial of degree <= n written in the basis P_0^n..P_n^n.
class KrawPoly {
 public:
  // coeffs must have exactly n+1 entries.
  KrawPoly(int n, std::vector<Rational> coeffs);

  static KrawPoly zero(int n);
  static KrawPoly basis(int n, int j);  // P_j^n itself

  int n() const { return n_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& coeff(int j) const;

  Rational eval(int x) const;
  std::vector<Rational> values() const;  // eval(0..n)

  KrawPoly& operator+=(const KrawPoly& other);
  KrawPoly& operator-=(const KrawPoly& other);
  KrawPoly& operator*=(const Rational& s);
  friend KrawPoly operator+(KrawPoly a, const KrawPoly& b) { return a += b; }
  friend KrawPoly operator-(KrawPoly a, const KrawPoly& b) { return a -= b; }
  friend KrawPoly operator*(KrawPoly a, const Rational& s) { return a *= s; }
  friend KrawPoly operator*(const Rational& s, KrawPoly a) { return a *= s; }
  KrawPoly operator-() const { return *this * Rational(-1); }

  bool operator==(const KrawPoly& other) const = default;

 private:
  void check_same_basis(const KrawPoly& other) const;

  int n_;
  std::vector<Rational> coeffs_;
};

// Coefficients f_i = 2^-n sum_j f(j) P_j^n(i) of the unique expansion
// interpolating `values` on {0..n}. values.size() must be n+1.
KrawPoly kraw_expand(int n, std::span<const Rational> values);

Rational kraw_eval(const KrawPoly& poly, int x);

// Length reduction n -> n-1: mu_j = alpha_j + alpha_{j+1}. The result agrees
// with the input at every integer x in [0, n-1].
KrawPoly reduce_length(const KrawPoly& poly);

// Serialization as "p/q" strings, coefficient order j = 0..n.
std::vector<std::string> to_strings(const KrawPoly& poly);
KrawPoly kraw_poly_from_strings(int n, const std::vector<std::string>& coeffs);

}  // namespace avgdist
