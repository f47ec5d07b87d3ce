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

#include <doctest.h>

#include <random>

#include "avgdist/rational.hpp"

using namespace avgdist;

TEST_SUITE("rational") {
  TEST_CASE("fraction strings always carry a denominator") {
    CHECK(to_fraction_string(Rational(0)) == "0/1");
    CHECK(to_fraction_string(make_rational(3, 2)) == "3/2");
    CHECK(to_fraction_string(make_rational(-32, 10)) == "-16/5");
    CHECK(to_fraction_string(Rational(7)) == "7/1");
  }

  TEST_CASE("parse_rational accepts p/q and integers") {
    CHECK(parse_rational("19/10") == make_rational(19, 10));
    CHECK(parse_rational("-4/6") == make_rational(-2, 3));
    CHECK(parse_rational("+5") == Rational(5));
    CHECK(parse_rational("0/1") == Rational(0));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
  }

  TEST_CASE("fraction strings round-trip") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> num(-100000, 100000), den(1, 100000);
    for (int t = 0; t < 500; ++t) {
      const Rational r = make_rational(num(rng), den(rng));
      CHECK(parse_rational(to_fraction_string(r)) == r);
    }
  }

  TEST_CASE("decimal rendering is correctly rounded to 12 significant digits") {
    CHECK(to_decimal_string(make_rational(19, 10)) == "1.90000000000");
    CHECK(to_decimal_string(make_rational(1, 3)) == "0.333333333333");
    CHECK(to_decimal_string(make_rational(2, 3)) == "0.666666666667");
    CHECK(to_decimal_string(make_rational(-2, 3)) == "-0.666666666667");
    CHECK(to_decimal_string(Rational(0)) == "0.00000000000");
    CHECK(to_decimal_string(Rational(1000)) == "1000.00000000");
    CHECK(to_decimal_string(make_rational(999999999999999, 1000000000000000)) == "1.00000000000");
  }

  TEST_CASE("decimal rendering rounds ties to even") {
    CHECK(to_decimal_string(make_rational(1, 8), 2) == "0.12");
    CHECK(to_decimal_string(make_rational(3, 8), 2) == "0.38");
    CHECK(to_decimal_string(make_rational(5, 2), 1) == "2");
    CHECK(to_decimal_string(make_rational(7, 2), 1) == "4");
  }

  TEST_CASE("decimal rendering switches to scientific notation far from 1") {
    CHECK(to_decimal_string(make_rational(1, 10000000), 3) == "1.00e-7");
    CHECK(to_decimal_string(Rational(pow2(80)), 3) == "1.21e24");
  }

  TEST_CASE("decimal rendering is within half an ulp of the value") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> num(1, 1000000000), den(1, 1000000000);
    for (int t = 0; t < 300; ++t) {
      const Rational r = make_rational(num(rng), den(rng));
      const std::string s = to_decimal_string(r, 12);
      if (s.find('e') != std::string::npos) continue;
      const auto dot = s.find('.');
      const std::string digits = s.substr(0, dot) + (dot == std::string::npos ? "" : s.substr(dot + 1));
      const long frac = dot == std::string::npos ? 0 : static_cast<long>(s.size() - dot - 1);
      Integer scale = 1;
      for (long i = 0; i < frac; ++i) scale *= 10;
      const Rational value = make_rational(Integer(digits, 10), scale);
      CHECK(abs(value - r) * scale * 2 <= 1);
    }
  }

  TEST_CASE("isqrt and pow2") {
    CHECK(isqrt(Integer(0)) == 0);
    CHECK(isqrt(Integer(15)) == 3);
    CHECK(isqrt(Integer(16)) == 4);
    CHECK(pow2(10) == 1024);
    const Integer big = pow2(200) + 12345;
    const Integer t = isqrt(big);
    CHECK(t * t <= big);
    CHECK((t + 1) * (t + 1) > big);
  }
}
