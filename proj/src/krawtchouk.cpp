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

#include "avgdist/krawtchouk.hpp"

#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace avgdist {

namespace {

// Read-mostly memo keyed by n.
template <typename T>
class NCache {
 public:
  template <typename Make>
  std::shared_ptr<const T> get(int n, Make&& make) {
    {
      std::shared_lock lock(mu_);
      if (auto it = map_.find(n); it != map_.end()) return it->second;
    }
    auto value = std::make_shared<const T>(make());
    std::unique_lock lock(mu_);
    auto [it, inserted] = map_.emplace(n, std::move(value));
    return it->second;
  }

 private:
  std::shared_mutex mu_;
  std::unordered_map<int, std::shared_ptr<const T>> map_;
};

NCache<std::vector<Integer>>& pascal_cache() {
  static NCache<std::vector<Integer>> cache;
  return cache;
}

NCache<KrawTable>& table_cache() {
  static NCache<KrawTable> cache;
  return cache;
}

void check_range(int n, int k, int x) {
  if (n < 0 || k < 0 || k > n || x < 0 || x > n) {
    throw DomainError("Krawtchouk argument out of range: n=" + std::to_string(n) +
                      " k=" + std::to_string(k) + " x=" + std::to_string(x));
  }
}

// Fills out[k] = P_k^n(x) for k = 0..kmax.
void column_into(int n, int x, int kmax, std::vector<Integer>& out) {
  out.assign(static_cast<std::size_t>(kmax) + 1, Integer(0));
  out[0] = 1;
  if (kmax == 0) return;
  const Integer slope = n - 2 * x;
  out[1] = slope;
  Integer t;
  for (int k = 1; k < kmax; ++k) {
    t = slope * out[k] - Integer(n - k + 1) * out[k - 1];
    mpz_divexact_ui(out[k + 1].get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(k + 1));
  }
}

}  // namespace

std::shared_ptr<const std::vector<Integer>> pascal_row(int n) {
  if (n < 0) throw DomainError("pascal_row: negative n");
  return pascal_cache().get(n, [n] {
    std::vector<Integer> row(static_cast<std::size_t>(n) + 1);
    row[0] = 1;
    for (int k = 1; k <= n; ++k) {
      row[k] = row[k - 1] * (n - k + 1);
      mpz_divexact_ui(row[k].get_mpz_t(), row[k].get_mpz_t(), static_cast<unsigned long>(k));
    }
    return row;
  });
}

Integer binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  return (*pascal_row(n))[static_cast<std::size_t>(k)];
}

KrawTable::KrawTable(int n)
    : n_(n), stride_(static_cast<std::size_t>(n) + 1), values_(stride_ * stride_) {
  if (n < 0) throw DomainError("KrawTable: negative n");
  std::vector<Integer> col;
  for (int x = 0; x <= n; ++x) {
    column_into(n, x, n, col);
    for (int k = 0; k <= n; ++k) {
      values_[static_cast<std::size_t>(k) * stride_ + static_cast<std::size_t>(x)] = col[k];
    }
  }
}

std::shared_ptr<const KrawTable> kraw_table(int n) {
  if (n < 0) throw DomainError("kraw_table: negative n");
  if (n > kKrawTableCacheMaxN) return std::make_shared<const KrawTable>(n);
  return table_cache().get(n, [n] { return KrawTable(n); });
}

Integer kraw_value(int n, int k, int x) {
  check_range(n, k, x);
  if (n <= kKrawTableCacheMaxN) return kraw_table(n)->at(k, x);
  std::vector<Integer> col;
  column_into(n, x, k, col);
  return col[k];
}

Integer kraw_value_reference(int n, int k, int x) {
  check_range(n, k, x);
  Integer sum = 0;
  for (int j = 0; j <= k; ++j) {
    Integer term = binomial(x, j) * binomial(n - x, k - j);
    if (j % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

Integer kraw_value_at_zero(int n, int k) {
  check_range(n, k, 0);
  return binomial(n, k);
}

std::vector<Integer> kraw_column(int n, int x) {
  check_range(n, 0, x);
  std::vector<Integer> col;
  column_into(n, x, n, col);
  return col;
}

// KrawPoly

KrawPoly::KrawPoly(int n, std::vector<Rational> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
  if (n < 0) throw DomainError("KrawPoly: negative n");
  if (coeffs_.size() != static_cast<std::size_t>(n) + 1) {
    throw DomainError("KrawPoly over n=" + std::to_string(n) + " needs " + std::to_string(n + 1) +
                      " coefficients, got " + std::to_string(coeffs_.size()));
  }
  for (auto& c : coeffs_) c.canonicalize();
}

KrawPoly KrawPoly::zero(int n) {
  if (n < 0) throw DomainError("KrawPoly: negative n");
  return KrawPoly(n, std::vector<Rational>(static_cast<std::size_t>(n) + 1));
}

KrawPoly KrawPoly::basis(int n, int j) {
  KrawPoly p = zero(n);
  if (j < 0 || j > n) throw DomainError("KrawPoly::basis: index out of range");
  p.coeffs_[static_cast<std::size_t>(j)] = 1;
  return p;
}

const Rational& KrawPoly::coeff(int j) const {
  if (j < 0 || j > n_) throw DomainError("KrawPoly::coeff: index out of range");
  return coeffs_[static_cast<std::size_t>(j)];
}

Rational KrawPoly::eval(int x) const {
  check_range(n_, 0, x);
  Rational sum = 0;
  if (n_ <= kKrawTableCacheMaxN) {
    const auto table = kraw_table(n_);
    for (int j = 0; j <= n_; ++j) {
      if (sgn(coeffs_[j]) != 0) sum += coeffs_[j] * Rational(table->at(j, x));
    }
  } else {
    const auto col = kraw_column(n_, x);
    for (int j = 0; j <= n_; ++j) {
      if (sgn(coeffs_[j]) != 0) sum += coeffs_[j] * Rational(col[j]);
    }
  }
  return sum;
}

std::vector<Rational> KrawPoly::values() const {
  std::vector<Rational> out;
  out.reserve(coeffs_.size());
  for (int x = 0; x <= n_; ++x) out.push_back(eval(x));
  return out;
}

void KrawPoly::check_same_basis(const KrawPoly& other) const {
  if (other.n_ != n_) {
    throw DomainError("KrawPoly basis mismatch: n=" + std::to_string(n_) + " vs n=" +
                      std::to_string(other.n_));
  }
}

KrawPoly& KrawPoly::operator+=(const KrawPoly& other) {
  check_same_basis(other);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += other.coeffs_[j];
  return *this;
}

KrawPoly& KrawPoly::operator-=(const KrawPoly& other) {
  check_same_basis(other);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= other.coeffs_[j];
  return *this;
}

KrawPoly& KrawPoly::operator*=(const Rational& s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

KrawPoly kraw_expand(int n, std::span<const Rational> values) {
  if (n < 0) throw DomainError("kraw_expand: negative n");
  if (values.size() != static_cast<std::size_t>(n) + 1) {
    throw DomainError("kraw_expand over n=" + std::to_string(n) + " needs " +
                      std::to_string(n + 1) + " values, got " + std::to_string(values.size()));
  }
  // f_i = 2^-n sum_j f(j) P_j(i); by symmetry of the table access this is a
  // matrix-vector product against column i.
  const auto table = kraw_table(n);
  const Rational scale(Integer(1), pow2(static_cast<unsigned>(n)));
  std::vector<Rational> coeffs(values.size());
  for (int i = 0; i <= n; ++i) {
    Rational acc = 0;
    for (int j = 0; j <= n; ++j) {
      if (sgn(values[j]) != 0) acc += values[j] * Rational(table->at(j, i));
    }
    coeffs[i] = acc * scale;
  }
  return KrawPoly(n, std::move(coeffs));
}

Rational kraw_eval(const KrawPoly& poly, int x) { return poly.eval(x); }

KrawPoly reduce_length(const KrawPoly& poly) {
  const int n = poly.n();
  if (n < 2) throw DomainError("reduce_length needs n >= 2, got n=" + std::to_string(n));
  std::vector<Rational> mu(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) mu[j] = poly.coeff(j) + poly.coeff(j + 1);
  return KrawPoly(n - 1, std::move(mu));
}

std::vector<std::string> to_strings(const KrawPoly& poly) {
  std::vector<std::string> out;
  out.reserve(poly.coeffs().size());
  for (const auto& c : poly.coeffs()) out.push_back(to_fraction_string(c));
  return out;
}

KrawPoly kraw_poly_from_strings(int n, const std::vector<std::string>& coeffs) {
  std::vector<Rational> parsed;
  parsed.reserve(coeffs.size());
  for (const auto& s : coeffs) parsed.push_back(parse_rational(s));
  return KrawPoly(n, std::move(parsed));
}

}  // namespace avgdist
