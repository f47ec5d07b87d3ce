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

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace avgdist {

using Integer = mpz_class;
using Rational = mpq_class;

// Error hierarchy. Everything thrown by the library derives from Error so the
// CLI can map it to an exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// A certificate family was requested outside its guard.
class ApplicabilityError : public Error {
 public:
  using Error::Error;
};

// A bound was requested from a certificate that fails its sign conditions.
class CertificateError : public Error {
 public:
  using Error::Error;
};

Integer pow2(unsigned e);

// Always "p/q" with q >= 1, e.g. "0/1", "3/2", "-16/5".
std::string to_fraction_string(const Rational& r);

// Accepts "p/q", "p", and optional leading sign. Throws ParseError.
Rational parse_rational(std::string_view text);

// Correctly rounded (half-even) rendering with `digits` significant digits.
// Fixed notation for moderate magnitudes, scientific otherwise.
std::string to_decimal_string(const Rational& r, int digits = 12);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Largest integer t with t*t <= v, v >= 0.
Integer isqrt(const Integer& v);

}  // namespace avgdist
