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

#include "avgdist/lp.hpp"

#include <omp.h>

#include "avgdist/krawtchouk.hpp"

namespace avgdist {

std::string_view variant_name(LpVariant variant) {
  switch (variant) {
    case LpVariant::BSide: return "bside";
    case LpVariant::ASide: return "aside";
    case LpVariant::Odd: return "odd";
    case LpVariant::Mod4: return "mod4";
  }
  return "?";
}

std::optional<LpVariant> parse_variant(std::string_view name) {
  for (auto v : {LpVariant::BSide, LpVariant::ASide, LpVariant::Odd, LpVariant::Mod4}) {
    if (variant_name(v) == name) return v;
  }
  return std::nullopt;
}

namespace {

Rational size_rational(std::uint64_t M) { return Rational(Integer(static_cast<unsigned long>(M))); }

// Rows k = 1..n: sum_{i>=1} P_k(i) v_i >= -C(n,k), shared by both programs.
void add_transform_rows(int n, LinearProgram& lp) {
  const auto table = kraw_table(n);
  for (int k = 1; k <= n; ++k) {
    Constraint c;
    c.coeffs.resize(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) c.coeffs[i - 1] = Rational(table->at(k, i));
    c.relation = Relation::GreaterEqual;
    c.rhs = -Rational(binomial(n, k));
    lp.constraints.push_back(std::move(c));
  }
}

Rational clamp_zero(Rational v) { return sgn(v) < 0 ? Rational(0) : v; }

LpBoundDetail solve_bside(int n, std::uint64_t M, std::span<const Rational> lower, LpVariant variant) {
  LpBoundDetail d;
  d.variant = variant;
  d.program = bside_program(n, M, lower);
  d.solution = solve(d.program);
  d.bound = BoundResult{n, M, Direction::Lower, Rational(0), {}};
  if (d.solution.status == LpStatus::Optimal) {
    d.b1_max = d.solution.value;
    d.bound.value = clamp_zero((Rational(n) - d.b1_max) / 2);
  }
  return d;
}

}  // namespace

LinearProgram bside_program(int n, std::uint64_t M, std::span<const Rational> lower) {
  require_code_size(n, M);
  LinearProgram lp;
  lp.objective.assign(static_cast<std::size_t>(n), Rational(0));
  lp.objective[0] = 1;
  Constraint sum;
  sum.coeffs.assign(static_cast<std::size_t>(n), Rational(1));
  sum.relation = Relation::Equal;
  sum.rhs = Rational(pow2(static_cast<unsigned>(n))) / size_rational(M) - 1;
  lp.constraints.push_back(std::move(sum));
  add_transform_rows(n, lp);
  if (!lower.empty()) {
    if (lower.size() != static_cast<std::size_t>(n) + 1) {
      throw DomainError("B-side lower bounds need n+1 entries (index 0 unused)");
    }
    lp.lower.assign(lower.begin() + 1, lower.end());
  }
  return lp;
}

LinearProgram aside_program(int n, std::uint64_t M) {
  require_code_size(n, M);
  LinearProgram lp;
  lp.objective.resize(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) lp.objective[i - 1] = Rational(n - 2 * i);
  Constraint sum;
  sum.coeffs.assign(static_cast<std::size_t>(n), Rational(1));
  sum.relation = Relation::Equal;
  sum.rhs = size_rational(M) - 1;
  lp.constraints.push_back(std::move(sum));
  add_transform_rows(n, lp);
  return lp;
}

std::vector<Rational> odd_lower_bounds(int n, std::uint64_t M) {
  const Rational m = size_rational(M);
  std::vector<Rational> lower(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) lower[i] = Rational(binomial(n, i)) / (m * m);
  return lower;
}

std::vector<Rational> mod4_lower_bounds(int n, std::uint64_t M, int ell) {
  const Rational m = size_rational(M);
  std::vector<Rational> lower(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    lower[i] = 2 * Rational(binomial(n, i) + kraw_value(n, i, ell)) / (m * m);
  }
  return lower;
}

LpBoundDetail lp_bound_detail(LpVariant variant, int n, std::uint64_t M) {
  require_code_size(n, M);
  switch (variant) {
    case LpVariant::BSide: {
      auto d = solve_bside(n, M, {}, variant);
      d.bound.provenance = {"lp:bside"};
      return d;
    }
    case LpVariant::ASide: {
      LpBoundDetail d;
      d.variant = variant;
      d.program = aside_program(n, M);
      d.solution = solve(d.program);
      d.bound = BoundResult{n, M, Direction::Lower, Rational(0), {"lp:aside"}};
      if (d.solution.status == LpStatus::Optimal) {
        d.b1_max = (d.solution.value + n) / size_rational(M);
        d.bound.value = clamp_zero((Rational(n) - d.b1_max) / 2);
      }
      return d;
    }
    case LpVariant::Odd: {
      if (M % 2 == 0) throw DomainError("odd LP variant needs odd M, got M=" + std::to_string(M));
      const auto lower = odd_lower_bounds(n, M);
      auto d = solve_bside(n, M, lower, variant);
      d.bound.provenance = {"lp:odd"};
      return d;
    }
    case LpVariant::Mod4: {
      if (M % 4 != 2) throw DomainError("mod4 LP variant needs M = 2 mod 4, got M=" + std::to_string(M));
      std::vector<LpBoundDetail> runs(static_cast<std::size_t>(n) + 1);
#pragma omp parallel for schedule(dynamic)
      for (int ell = 0; ell <= n; ++ell) {
        runs[ell] = solve_bside(n, M, mod4_lower_bounds(n, M, ell), variant);
      }
      std::optional<int> best;
      std::vector<std::optional<Rational>> per_ell(runs.size());
      for (int ell = 0; ell <= n; ++ell) {
        if (runs[ell].solution.status != LpStatus::Optimal) continue;
        per_ell[ell] = runs[ell].bound.value;
        if (!best || runs[ell].bound.value < runs[*best].bound.value) best = ell;
      }
      if (!best) {
        throw Error("mod4 LP: every ell is infeasible at n=" + std::to_string(n) +
                    " M=" + std::to_string(M));
      }
      LpBoundDetail d = std::move(runs[*best]);
      d.ell = *best;
      d.per_ell = std::move(per_ell);
      d.bound.provenance = {"lp:mod4(min over ell, attained at ell=" + std::to_string(*best) + ")"};
      return d;
    }
  }
  throw DomainError("unknown LP variant");
}

BoundResult lp_bound_bside(int n, std::uint64_t M) {
  return lp_bound_detail(LpVariant::BSide, n, M).bound;
}

BoundResult lp_bound_aside(int n, std::uint64_t M) {
  return lp_bound_detail(LpVariant::ASide, n, M).bound;
}

BoundResult lp_bound_odd(int n, std::uint64_t M) {
  return lp_bound_detail(LpVariant::Odd, n, M).bound;
}

BoundResult lp_bound_mod4(int n, std::uint64_t M) {
  return lp_bound_detail(LpVariant::Mod4, n, M).bound;
}

Certificate certificate_from_dual(const LpBoundDetail& detail) {
  if (detail.solution.status != LpStatus::Optimal) {
    throw DomainError("certificate_from_dual needs an optimal solution");
  }
  if (detail.variant != LpVariant::BSide && detail.variant != LpVariant::ASide) {
    throw DomainError("certificate_from_dual supports the bside and aside programs only");
  }
  const int n = detail.bound.n;
  const auto& y = detail.solution.dual;
  // Row 0 is the sum equality (free multiplier y_0); rows 1..n carry
  // multipliers y_k <= 0 on the transform rows. With z_k = -y_k the dual
  // constraint reads  -y_0 + sum_k z_k P_k(i) <= -[i == 1]  (B side) or
  // P_1(i) - y_0 + sum_k z_k P_k(i) <= 0  (A side).
  std::vector<Rational> coeffs(static_cast<std::size_t>(n) + 1);
  coeffs[0] = -y[0];
  for (int k = 1; k <= n; ++k) coeffs[k] = -y[k];
  Certificate cert;
  if (detail.variant == LpVariant::BSide) {
    cert.side = Side::Lambda;
    cert.family = "lp-dual(bside)";
  } else {
    coeffs[1] += 1;
    cert.side = Side::Alpha;
    cert.family = "lp-dual(aside)";
  }
  cert.guard = "n=" + std::to_string(n) + ", M=" + std::to_string(detail.bound.M);
  cert.poly = KrawPoly(n, std::move(coeffs));
  return cert;
}

}  // namespace avgdist
