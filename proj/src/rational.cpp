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

#include "avgdist/rational.hpp"

#include <algorithm>
#include <cctype>

namespace avgdist {

Integer pow2(unsigned e) {
  Integer r = 1;
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), e);
  return r;
}

Integer isqrt(const Integer& v) {
  if (sgn(v) < 0) throw DomainError("isqrt of a negative number");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

std::string to_fraction_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

Integer pow10(unsigned e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view num = s;
  std::string_view den = "1";
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("not a rational: '" + std::string(text) + "'");
  }
  Integer p(std::string(num), 10);
  Integer q(std::string(den), 10);
  if (q == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  if (negative) p = -p;
  return make_rational(p, q);
}

std::string to_decimal_string(const Rational& r, int digits) {
  if (digits < 1) digits = 1;
  if (sgn(r) == 0) {
    std::string out = "0";
    if (digits > 1) out += "." + std::string(static_cast<std::size_t>(digits - 1), '0');
    return out;
  }
  const bool negative = sgn(r) < 0;
  const Integer p = abs(r.get_num());
  const Integer& q = r.get_den();

  // Decimal exponent e with 10^e <= |r| < 10^(e+1), starting from the digit
  // count estimate and correcting by at most one.
  long e = static_cast<long>(mpz_sizeinbase(p.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 10));
  auto scaled_ge = [&](long exp) {  // |r| >= 10^exp
    return exp >= 0 ? p >= q * pow10(static_cast<unsigned>(exp))
                    : p * pow10(static_cast<unsigned>(-exp)) >= q;
  };
  while (!scaled_ge(e)) --e;
  while (scaled_ge(e + 1)) ++e;

  // mantissa = round(|r| * 10^(digits-1-e)), half-even.
  const long shift = digits - 1 - e;
  Integer num = p, den = q;
  if (shift >= 0) {
    num *= pow10(static_cast<unsigned>(shift));
  } else {
    den *= pow10(static_cast<unsigned>(-shift));
  }
  Integer mant, rem;
  mpz_fdiv_qr(mant.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  const int cmp_half = cmp(2 * rem, den);
  if (cmp_half > 0 || (cmp_half == 0 && mpz_odd_p(mant.get_mpz_t()))) ++mant;
  if (mant == pow10(static_cast<unsigned>(digits))) {
    mant /= 10;
    ++e;
  }
  std::string m = mant.get_str();

  std::string out = negative ? "-" : "";
  if (e >= -6 && e < 16) {
    if (e >= 0) {
      const auto int_len = static_cast<std::size_t>(e + 1);
      if (m.size() <= int_len) {
        out += m + std::string(int_len - m.size(), '0');
      } else {
        out += m.substr(0, int_len) + "." + m.substr(int_len);
      }
    } else {
      out += "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + m;
    }
  } else {
    out += m.substr(0, 1);
    if (m.size() > 1) out += "." + m.substr(1);
    out += "e" + std::to_string(e);
  }
  return out;
}

}  // namespace avgdist
