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

// Certificate polynomials for lower bounds on the minimum average distance.
//
// Lambda side: lambda(1) = -1, lambda(i) <= 0 for 2 <= i <= n and
// lambda_j >= 0 for j >= 1 give
//
//   beta(n,M) >= (n - lambda(0) + 2^n lambda_0 / M) / 2.
//
// Alpha side: alpha_1 = 1, alpha_j >= 0 for j >= 2 and alpha(i) <= 0 for
// 1 <= i <= n give
//
//   beta(n,M) >= (n + alpha_0 - alpha(0) / M) / 2.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "avgdist/codes.hpp"
#include "avgdist/krawtchouk.hpp"

namespace avgdist {

enum class Side { Lambda, Alpha };

std::string_view side_name(Side side);

enum class Family {
  LambdaConst,    // lambda = -1
  LambdaHalfPn,   // lambda = -1/2 + P_n/2
  LambdaEven,     // (3 - n + P_{n-1} + P_n) / (2(n-2)), n even > 2
  LambdaOdd,      // (2 - n + P_{n-1} + 2 P_n) / (2(n-1)), n odd > 1
  AlphaLinear,    // 2 - n + P_1 = 2(1 - x)
  AlphaPn,        // 3 - n + P_1 + P_n
  AlphaHalfEven,  // zeros at 1,2,3; n even
  AlphaHalfOdd,   // length reduction of AlphaHalfEven at n+1; n odd > 1
  AlphaMod4_1,    // zeros at 1..4; n = 1 mod 4, n != 1
  AlphaMod4_0,    // reduction of AlphaMod4_1 at n+1; n = 0 mod 4
  AlphaMod4_3,    // two reductions of AlphaMod4_1 at n+2; n = 3 mod 4, n != 3
  AlphaMod4_2,    // three reductions of AlphaMod4_1 at n+3; n = 2 mod 4, n != 2
};

std::span<const Family> builtin_families();
std::string_view family_id(Family family);  // e.g. "ALPHA_HALF_EVEN"
std::optional<Family> parse_family(std::string_view id);  // case-insensitive, '-' == '_'
Side family_side(Family family);
std::string_view family_guard(Family family);  // human-readable guard
bool family_applies(Family family, int n);

struct Certificate {
  Side side = Side::Lambda;
  KrawPoly poly = KrawPoly::zero(0);
  std::string family;
  std::string guard;
};

// Throws ApplicabilityError naming the guard when n is outside it.
Certificate build_family(Family family, int n);

struct VerificationReport {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
};

// Exhaustive check of the side's sign conditions at every point and every
// coefficient.
VerificationReport verify_certificate(const Certificate& cert);

// Lower bound on the average distance implied at size M. Throws CertificateError when the certificate
// fails verification and DomainError when M == 0.
Rational certificate_bound(const Certificate& cert, std::uint64_t M);

// Same formula without verification. Used by equality diagnosis, where only
// code-specific subsets of the conditions are required.
Rational certificate_formula(const Certificate& cert, std::uint64_t M);

// alpha_i = lambda(i) (equivalently alpha(j) = 2^n lambda_j) and back.
// Note the dual of a valid lambda certificate has alpha_1 = -1; negating it
// gives a valid alpha certificate with the same bound.
Certificate dualize(const Certificate& cert);

// Code-specific form of the bound: I and J are the supports read off the
// code's distributions. When the hypotheses hold, the bound is <= d(C) with
// equality exactly when the certificate vanishes on I and J.
struct EqualityReport {
  Side side = Side::Lambda;
  std::vector<int> I;  // lambda: i >= 2 with B_i != 0; alpha: i >= 1 with A_i != 0
  std::vector<int> J;  // lambda: j >= 1 with A_j != 0; alpha: j >= 2 with B_j != 0
  bool hypotheses_hold = false;
  bool equality_holds = false;
  Rational bound;
  Rational average_distance;
  // hypotheses imply bound <= d(C) and (bound == d(C)) == equality_holds
  bool consistent = false;
};

// Throws DomainError when the code length differs from the certificate's n.
EqualityReport equality_diagnosis(const Certificate& cert, const Code& code);

}  // namespace avgdist
