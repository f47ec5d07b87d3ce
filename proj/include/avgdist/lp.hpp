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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "avgdist/bound_result.hpp"
#include "avgdist/certificates.hpp"
#include "avgdist/rational.hpp"

namespace avgdist {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct Constraint {
  std::vector<Rational> coeffs;
  Relation relation = Relation::LessEqual;
  Rational rhs;
};

// maximize objective . x  subject to constraints and x >= lower
// (lower empty means all zero).
struct LinearProgram {
  std::vector<Rational> objective;
  std::vector<Constraint> constraints;
  std::vector<Rational> lower;

  std::size_t num_vars() const { return objective.size(); }
  Rational lower_bound(std::size_t j) const { return lower.empty() ? Rational(0) : lower[j]; }
  // Throws DomainError on inconsistent dimensions.
  void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string_view status_name(LpStatus status);

// Optimal: dual[i] is the multiplier of constraint i (>= 0 for <=, <= 0 for
//   >=, free for =), the reduced costs r = objective - A^T dual are <= 0, and
//   value = objective . point = dual . b + r . lower.
// Infeasible: dual is a Farkas ray: same sign pattern, A^T dual >= 0 and
//   dual . (b - A l) < 0.
// Unbounded: point is feasible and ray is a recession direction with
//   objective . ray > 0.
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> point;
  std::vector<Rational> dual;
  std::vector<Rational> ray;
  std::size_t pivots = 0;
};

// Two-phase dense-tableau simplex over exact rationals, Bland's rule.
LpSolution solve(const LinearProgram& lp);

// Re-verifies a solution from its own data. Empty when the claim is proven:
// feasibility, dual feasibility, equal objectives and complementary slackness
// for Optimal; the Farkas inequality for Infeasible; the ray for Unbounded.
std::vector<std::string> check_solution(const LinearProgram& lp, const LpSolution& sol);

// Delsarte-type programs for beta(n, M).
enum class LpVariant { BSide, ASide, Odd, Mod4 };

std::string_view variant_name(LpVariant variant);  // "bside", "aside", "odd", "mod4"
std::optional<LpVariant> parse_variant(std::string_view name);

// maximize B_1 s.t. sum_{i>=1} B_i = 2^n/M - 1,
//                  sum_{i>=1} P_k(i) B_i >= -P_k(0) (k = 1..n),
//                  B_i >= lower_i (zero when lower is empty).
// Variable j holds B_{j+1}.
LinearProgram bside_program(int n, std::uint64_t M, std::span<const Rational> lower = {});

// maximize sum P_1(i) A_i s.t. sum_{i>=1} A_i = M - 1,
//                             sum_{i>=1} P_k(i) A_i >= -P_k(0), A_i >= 0.
LinearProgram aside_program(int n, std::uint64_t M);

// Lower bounds B_i >= C(n,i)/M^2 (odd M).
std::vector<Rational> odd_lower_bounds(int n, std::uint64_t M);
// Lower bounds B_i >= 2 (C(n,i) + P_i(ell)) / M^2 (M = 2 mod 4).
std::vector<Rational> mod4_lower_bounds(int n, std::uint64_t M, int ell);

struct LpBoundDetail {
  LpVariant variant = LpVariant::BSide;
  BoundResult bound;
  LinearProgram program;   // the program whose solution is reported
  LpSolution solution;
  Rational b1_max;         // optimum converted to an upper bound on B_1
  std::optional<int> ell;  // minimizing ell for Mod4
  std::vector<std::optional<Rational>> per_ell;  // Mod4: beta-bound per ell, nullopt if infeasible
};

// Solve one variant. Mod4 runs all n+1 programs and keeps the minimum over
// ell; programs that are infeasible rule that ell out. The reported bound is
// clamped below at 0. Throws DomainError on an out-of-range M or a variant
// whose parity condition fails.
LpBoundDetail lp_bound_detail(LpVariant variant, int n, std::uint64_t M);

BoundResult lp_bound_bside(int n, std::uint64_t M);
BoundResult lp_bound_aside(int n, std::uint64_t M);
BoundResult lp_bound_odd(int n, std::uint64_t M);
BoundResult lp_bound_mod4(int n, std::uint64_t M);

// Normalizes the optimal dual of the B-side (or A-side) program into a
// lambda (or alpha) certificate whose bound equals the LP bound.
Certificate certificate_from_dual(const LpBoundDetail& detail);

}  // namespace avgdist
