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

#include "avgdist/certificates.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace avgdist {

namespace {

constexpr std::array kFamilies = {
    Family::LambdaConst,   Family::LambdaHalfPn, Family::LambdaEven,   Family::LambdaOdd,
    Family::AlphaLinear,   Family::AlphaPn,      Family::AlphaHalfEven, Family::AlphaHalfOdd,
    Family::AlphaMod4_1,   Family::AlphaMod4_0,  Family::AlphaMod4_3,  Family::AlphaMod4_2,
};

struct FamilyInfo {
  std::string_view id;
  Side side;
  std::string_view guard;
};

FamilyInfo info(Family f) {
  switch (f) {
    case Family::LambdaConst: return {"LAMBDA_CONST", Side::Lambda, "n >= 1"};
    case Family::LambdaHalfPn: return {"LAMBDA_HALF_PN", Side::Lambda, "n >= 1"};
    case Family::LambdaEven: return {"LAMBDA_EVEN", Side::Lambda, "n even, n > 2"};
    case Family::LambdaOdd: return {"LAMBDA_ODD", Side::Lambda, "n odd, n > 1"};
    case Family::AlphaLinear: return {"ALPHA_LINEAR", Side::Alpha, "n >= 1"};
    case Family::AlphaPn: return {"ALPHA_PN", Side::Alpha, "n >= 2"};
    case Family::AlphaHalfEven: return {"ALPHA_HALF_EVEN", Side::Alpha, "n even, n >= 2"};
    case Family::AlphaHalfOdd: return {"ALPHA_HALF_ODD", Side::Alpha, "n odd, n > 1"};
    case Family::AlphaMod4_1: return {"ALPHA_MOD4_1", Side::Alpha, "n = 1 mod 4, n != 1"};
    case Family::AlphaMod4_0: return {"ALPHA_MOD4_0", Side::Alpha, "n = 0 mod 4, n >= 4"};
    case Family::AlphaMod4_3: return {"ALPHA_MOD4_3", Side::Alpha, "n = 3 mod 4, n != 3"};
    case Family::AlphaMod4_2: return {"ALPHA_MOD4_2", Side::Alpha, "n = 2 mod 4, n != 2"};
  }
  throw DomainError("unknown certificate family");
}

Rational q(const Integer& num, const Integer& den) { return make_rational(num, den); }

// Coefficient builder with += semantics so coinciding indices add up.
class Coeffs {
 public:
  explicit Coeffs(int n) : n_(n), c_(static_cast<std::size_t>(n) + 1) {}
  void add(int j, const Rational& v) { c_.at(static_cast<std::size_t>(j)) += v; }
  KrawPoly done() && { return KrawPoly(n_, std::move(c_)); }

 private:
  int n_;
  std::vector<Rational> c_;
};

KrawPoly family_poly(Family f, int n) {
  const Integer N = n;
  Coeffs c(n);
  switch (f) {
    case Family::LambdaConst:
      c.add(0, -1);
      break;
    case Family::LambdaHalfPn:
      c.add(0, Rational(-1, 2));
      c.add(n, Rational(1, 2));
      break;
    case Family::LambdaEven: {
      const Integer den = 2 * (N - 2);
      c.add(0, q(3 - N, den));
      c.add(n - 1, q(1, den));
      c.add(n, q(1, den));
      break;
    }
    case Family::LambdaOdd: {
      const Integer den = 2 * (N - 1);
      c.add(0, q(2 - N, den));
      c.add(n - 1, q(1, den));
      c.add(n, q(2, den));
      break;
    }
    case Family::AlphaLinear:
      c.add(0, Rational(2 - n));
      c.add(1, 1);
      break;
    case Family::AlphaPn:
      c.add(0, Rational(3 - n));
      c.add(1, 1);
      c.add(n, 1);
      break;
    case Family::AlphaHalfEven: {
      const int top = n / 2 + 1;
      c.add(0, q(N * (4 - N), N + 2));
      c.add(1, 1);
      c.add(top, q(4 * binomial(n, 2), (N + 2) * binomial(n, top)));
      break;
    }
    case Family::AlphaHalfOdd: {
      const Rational weight = q(4 * binomial(n + 1, 2), (N + 3) * binomial(n + 1, (n + 3) / 2));
      c.add(0, q(6 + 3 * N - N * N, N + 3));
      c.add(1, 1);
      c.add((n + 1) / 2, weight);
      c.add((n + 3) / 2, weight);
      break;
    }
    case Family::AlphaMod4_1:
      c.add(0, q((1 - N) * (N - 5), N + 1));
      c.add(1, 1);
      c.add((n + 1) / 2, q(4 * N * (N - 2), (N + 1) * binomial(n, (n + 1) / 2)));
      c.add(n, 1);
      break;
    case Family::AlphaMod4_0: {
      const Rational weight = q(4 * (N * N - 1), (N + 2) * binomial(n + 1, (n + 2) / 2));
      c.add(0, q(2 + 5 * N - N * N, N + 2));
      c.add(1, 1);
      c.add(n / 2, weight);
      c.add((n + 2) / 2, weight);
      c.add(n, 1);
      break;
    }
    case Family::AlphaMod4_3: {
      const Rational weight = q(4 * N * (N + 2), (N + 3) * binomial(n + 2, (n + 3) / 2));
      c.add(0, q(9 + 4 * N - N * N, N + 3));
      c.add(1, 1);
      c.add((n - 1) / 2, weight);
      c.add((n + 1) / 2, 2 * weight);
      c.add((n + 3) / 2, weight);
      c.add(n, 1);
      break;
    }
    case Family::AlphaMod4_2: {
      const Rational weight = q(4 * (N + 1) * (N + 3), (N + 4) * binomial(n + 3, (n + 4) / 2));
      c.add(0, q(16 + 3 * N - N * N, N + 4));
      c.add(1, 1);
      c.add((n - 2) / 2, weight);
      c.add(n / 2, 3 * weight);
      c.add((n + 2) / 2, 3 * weight);
      c.add((n + 4) / 2, weight);
      c.add(n, 1);
      break;
    }
  }
  return std::move(c).done();
}

}  // namespace

std::string_view side_name(Side side) { return side == Side::Lambda ? "lambda" : "alpha"; }

std::span<const Family> builtin_families() { return kFamilies; }

std::string_view family_id(Family family) { return info(family).id; }

std::optional<Family> parse_family(std::string_view id) {
  std::string norm;
  norm.reserve(id.size());
  for (char ch : id) {
    norm += ch == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  }
  for (auto f : kFamilies) {
    if (info(f).id == norm) return f;
  }
  return std::nullopt;
}

Side family_side(Family family) { return info(family).side; }

std::string_view family_guard(Family family) { return info(family).guard; }

bool family_applies(Family family, int n) {
  if (n < 1) return false;
  switch (family) {
    case Family::LambdaConst:
    case Family::LambdaHalfPn:
    case Family::AlphaLinear: return true;
    case Family::AlphaPn: return n >= 2;
    case Family::LambdaEven: return n % 2 == 0 && n > 2;
    case Family::LambdaOdd: return n % 2 == 1 && n > 1;
    case Family::AlphaHalfEven: return n % 2 == 0;
    case Family::AlphaHalfOdd: return n % 2 == 1 && n > 1;
    case Family::AlphaMod4_1: return n % 4 == 1 && n != 1;
    case Family::AlphaMod4_0: return n % 4 == 0;
    case Family::AlphaMod4_3: return n % 4 == 3 && n != 3;
    case Family::AlphaMod4_2: return n % 4 == 2 && n != 2;
  }
  return false;
}

Certificate build_family(Family family, int n) {
  const auto fi = info(family);
  if (!family_applies(family, n)) {
    throw ApplicabilityError(std::string(fi.id) + " requires " + std::string(fi.guard) +
                             ", got n=" + std::to_string(n));
  }
  return Certificate{fi.side, family_poly(family, n), std::string(fi.id), std::string(fi.guard)};
}

VerificationReport verify_certificate(const Certificate& cert) {
  VerificationReport report;
  const int n = cert.poly.n();
  auto& out = report.violations;
  if (n < 1) {
    out.push_back("certificate needs n >= 1");
    return report;
  }
  const auto values = cert.poly.values();
  const auto& coeffs = cert.poly.coeffs();
  if (cert.side == Side::Lambda) {
    if (values[1] != -1) out.push_back("λ(1) ≠ -1 (got " + to_fraction_string(values[1]) + ")");
    for (int i = 2; i <= n; ++i) {
      if (sgn(values[i]) > 0) {
        out.push_back("λ(" + std::to_string(i) + ") > 0 (got " + to_fraction_string(values[i]) + ")");
      }
    }
    for (int j = 1; j <= n; ++j) {
      if (sgn(coeffs[j]) < 0) {
        out.push_back("λ_" + std::to_string(j) + " < 0 (got " + to_fraction_string(coeffs[j]) + ")");
      }
    }
  } else {
    if (coeffs[1] != 1) out.push_back("α_1 ≠ 1 (got " + to_fraction_string(coeffs[1]) + ")");
    for (int j = 2; j <= n; ++j) {
      if (sgn(coeffs[j]) < 0) {
        out.push_back("α_" + std::to_string(j) + " < 0 (got " + to_fraction_string(coeffs[j]) + ")");
      }
    }
    for (int i = 1; i <= n; ++i) {
      if (sgn(values[i]) > 0) {
        out.push_back("α(" + std::to_string(i) + ") > 0 (got " + to_fraction_string(values[i]) + ")");
      }
    }
  }
  return report;
}

Rational certificate_formula(const Certificate& cert, std::uint64_t M) {
  if (M == 0) throw DomainError("code size M must be positive");
  const int n = cert.poly.n();
  const Rational m(Integer(static_cast<unsigned long>(M)));
  const Rational at_zero = cert.poly.eval(0);
  const Rational& c0 = cert.poly.coeff(0);
  if (cert.side == Side::Lambda) {
    return (Rational(n) - at_zero + Rational(pow2(static_cast<unsigned>(n))) * c0 / m) / 2;
  }
  return (Rational(n) + c0 - at_zero / m) / 2;
}

Rational certificate_bound(const Certificate& cert, std::uint64_t M) {
  const auto report = verify_certificate(cert);
  if (!report.valid()) {
    throw CertificateError("certificate " + cert.family + " is invalid: " + report.violations.front());
  }
  return certificate_formula(cert, M);
}

Certificate dualize(const Certificate& cert) {
  const int n = cert.poly.n();
  Certificate out;
  out.family = "dual(" + cert.family + ")";
  out.guard = cert.guard;
  if (cert.side == Side::Lambda) {
    out.side = Side::Alpha;
    out.poly = KrawPoly(n, cert.poly.values());
  } else {
    out.side = Side::Lambda;
    auto values = cert.poly.values();
    const Rational scale(Integer(1), pow2(static_cast<unsigned>(n)));
    for (auto& v : values) v *= scale;
    out.poly = KrawPoly(n, std::move(values));
  }
  return out;
}

EqualityReport equality_diagnosis(const Certificate& cert, const Code& code) {
  const int n = cert.poly.n();
  if (code.n() != n) {
    throw DomainError("code length " + std::to_string(code.n()) + " does not match certificate n=" +
                      std::to_string(n));
  }
  const auto dist = distance_distribution(code);
  const auto values = cert.poly.values();
  const auto& coeffs = cert.poly.coeffs();

  EqualityReport r;
  r.side = cert.side;
  bool hyp = true;
  bool eq = true;
  if (cert.side == Side::Lambda) {
    for (int i = 2; i <= n; ++i) {
      if (sgn(dist.B[i]) != 0) r.I.push_back(i);
    }
    for (int j = 1; j <= n; ++j) {
      if (sgn(dist.A[j]) != 0) r.J.push_back(j);
    }
    hyp = values[1] == -1;
    for (int i : r.I) {
      hyp = hyp && sgn(values[i]) <= 0;
      eq = eq && sgn(values[i]) == 0;
    }
    for (int j : r.J) {
      hyp = hyp && sgn(coeffs[j]) >= 0;
      eq = eq && sgn(coeffs[j]) == 0;
    }
  } else {
    for (int i = 1; i <= n; ++i) {
      if (sgn(dist.A[i]) != 0) r.I.push_back(i);
    }
    for (int j = 2; j <= n; ++j) {
      if (sgn(dist.B[j]) != 0) r.J.push_back(j);
    }
    hyp = n >= 1 && coeffs[1] == 1;
    for (int j : r.J) {
      hyp = hyp && sgn(coeffs[j]) >= 0;
      eq = eq && sgn(coeffs[j]) == 0;
    }
    for (int i : r.I) {
      hyp = hyp && sgn(values[i]) <= 0;
      eq = eq && sgn(values[i]) == 0;
    }
  }
  r.hypotheses_hold = hyp;
  r.equality_holds = hyp && eq;
  r.bound = certificate_formula(cert, code.size());
  r.average_distance = average_distance(code);
  r.consistent = !hyp || (r.bound <= r.average_distance &&
                          (r.bound == r.average_distance) == r.equality_holds);
  return r;
}

}  // namespace avgdist
