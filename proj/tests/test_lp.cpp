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

#include <map>
#include <random>

#include "avgdist/codes.hpp"
#include "avgdist/lp.hpp"
#include "avgdist/search.hpp"

using namespace avgdist;

namespace {

LinearProgram one_var(Rational obj) {
  LinearProgram lp;
  lp.objective = {obj};
  return lp;
}

Constraint row(std::vector<Rational> c, Relation rel, Rational rhs) {
  return Constraint{std::move(c), rel, std::move(rhs)};
}

Rational oracle(int n, std::uint64_t M) {
  static std::map<std::pair<int, std::uint64_t>, Rational> cache;
  auto key = std::make_pair(n, M);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  SearchConfig cfg;
  cfg.n = n;
  cfg.M = M;
  return cache[key] = brute_force_beta(cfg).beta;
}

}  // namespace

TEST_SUITE("lp") {
  TEST_CASE("solver: optimal, infeasible, unbounded") {
    auto lp = one_var(1);
    lp.constraints.push_back(row({1}, Relation::LessEqual, 3));
    auto s = solve(lp);
    CHECK(s.status == LpStatus::Optimal);
    CHECK(s.value == 3);
    CHECK(check_solution(lp, s).empty());

    auto inf = one_var(1);
    inf.constraints.push_back(row({1}, Relation::GreaterEqual, 1));
    inf.constraints.push_back(row({-1}, Relation::GreaterEqual, 0));
    auto si = solve(inf);
    CHECK(si.status == LpStatus::Infeasible);
    CHECK(check_solution(inf, si).empty());

    auto unb = one_var(1);
    unb.constraints.push_back(row({1}, Relation::GreaterEqual, 0));
    auto su = solve(unb);
    CHECK(su.status == LpStatus::Unbounded);
    CHECK(check_solution(unb, su).empty());
  }

  TEST_CASE("solver: equality rows, lower bounds and degenerate vertices") {
    LinearProgram lp;
    lp.objective = {1, 2, 0};
    lp.constraints.push_back(row({1, 1, 1}, Relation::Equal, 4));
    lp.constraints.push_back(row({1, -1, 0}, Relation::GreaterEqual, 0));
    lp.constraints.push_back(row({0, 1, 0}, Relation::LessEqual, 2));
    lp.lower = {make_rational(1, 2), 0, make_rational(1, 3)};
    auto s = solve(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.value == make_rational(11, 2));  // x3 = 1/3, x1 = x2 = 11/6
    CHECK(check_solution(lp, s).empty());
  }

  TEST_CASE("solver: malformed programs are rejected") {
    LinearProgram lp;
    lp.objective = {1, 1};
    lp.constraints.push_back(row({1}, Relation::LessEqual, 1));
    CHECK_THROWS_AS(lp.validate(), DomainError);
  }

  TEST_CASE("solver: random programs certify themselves") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coef(-6, 6), dim(1, 6), rel(0, 2);
    int optimal = 0, infeasible = 0, unbounded = 0;
    for (int t = 0; t < 400; ++t) {
      LinearProgram lp;
      const int nv = dim(rng), nc = dim(rng);
      for (int j = 0; j < nv; ++j) lp.objective.push_back(coef(rng));
      for (int i = 0; i < nc; ++i) {
        Constraint c;
        for (int j = 0; j < nv; ++j) c.coeffs.push_back(coef(rng));
        c.relation = static_cast<Relation>(rel(rng));
        c.rhs = coef(rng);
        lp.constraints.push_back(c);
      }
      const auto s = solve(lp);
      INFO("trial ", t);
      CHECK(check_solution(lp, s).empty());
      optimal += s.status == LpStatus::Optimal;
      infeasible += s.status == LpStatus::Infeasible;
      unbounded += s.status == LpStatus::Unbounded;
    }
    CHECK(optimal > 0);
    CHECK(infeasible > 0);
    CHECK(unbounded > 0);
  }

  TEST_CASE("check_solution catches a tampered optimum") {
    auto lp = one_var(1);
    lp.constraints.push_back(row({1}, Relation::LessEqual, 3));
    auto s = solve(lp);
    s.value = 4;
    CHECK_FALSE(check_solution(lp, s).empty());
    s = solve(lp);
    s.point[0] = 2;
    CHECK_FALSE(check_solution(lp, s).empty());
  }

  TEST_CASE("B-side examples") {
    CHECK(lp_bound_bside(3, 4).value == 1);
    CHECK(lp_bound_bside(3, 8).value == make_rational(3, 2));
    CHECK(lp_bound_bside(4, 8).value == make_rational(3, 2));
    CHECK(lp_bound_bside(4, 8).provenance == std::vector<std::string>{"lp:bside"});
  }

  TEST_CASE("A-side examples") {
    CHECK(lp_bound_aside(3, 1).value == 0);
    CHECK(lp_bound_aside(4, 2).value == make_rational(1, 2));
    CHECK(lp_bound_aside(6, 12).value >= make_rational(7, 4));
  }

  TEST_CASE("odd and mod-4 examples") {
    CHECK(lp_bound_odd(3, 3).value == make_rational(8, 9));
    const auto d = lp_bound_detail(LpVariant::Odd, 4, 1);
    REQUIRE(d.solution.status == LpStatus::Optimal);
    for (int i = 1; i <= 4; ++i) CHECK(d.solution.point[i - 1] == Rational(binomial(4, i)));
    CHECK(lp_bound_odd(4, 5).value >= make_rational(28, 25));
    CHECK_THROWS_AS(lp_bound_odd(4, 6), DomainError);

    CHECK(lp_bound_mod4(3, 2).value >= make_rational(1, 2));
    CHECK(lp_bound_mod4(3, 2).value <= oracle(3, 2));
    CHECK(lp_bound_mod4(4, 6).value >= make_rational(1, 18));
    CHECK(lp_bound_mod4(4, 6).value <= oracle(4, 6));
    CHECK_THROWS_AS(lp_bound_mod4(4, 8), DomainError);
    const auto m = lp_bound_detail(LpVariant::Mod4, 4, 6);
    REQUIRE(m.ell.has_value());
    REQUIRE(m.per_ell.size() == 5);
    for (const auto& v : m.per_ell) {
      if (v) CHECK(*v >= m.bound.value);
    }
  }

  TEST_CASE("both programs agree, and every solve re-certifies") {
    for (int n = 1; n <= 7; ++n) {
      for (std::uint64_t M = 1; M <= (std::uint64_t{1} << n); M += (n > 5 ? 3 : 1)) {
        const auto b = lp_bound_detail(LpVariant::BSide, n, M);
        const auto a = lp_bound_detail(LpVariant::ASide, n, M);
        INFO("n=", n, " M=", M);
        CHECK(check_solution(b.program, b.solution).empty());
        CHECK(check_solution(a.program, a.solution).empty());
        CHECK(b.bound.value == a.bound.value);
      }
    }
  }

  TEST_CASE("LP bounds never exceed exhaustive-search values") {
    for (int n = 1; n <= 4; ++n) {
      for (std::uint64_t M = 1; M <= (std::uint64_t{1} << n); ++M) {
        const Rational beta = oracle(n, M);
        INFO("n=", n, " M=", M);
        CHECK(lp_bound_bside(n, M).value <= beta);
        CHECK(lp_bound_aside(n, M).value <= beta);
        if (M % 2 == 1) CHECK(lp_bound_odd(n, M).value <= beta);
        if (M % 4 == 2) CHECK(lp_bound_mod4(n, M).value <= beta);
      }
    }
  }

  TEST_CASE("LP bounds never exceed constructions") {
    for (int n = 2; n <= 10; ++n) {
      const Code two = construct_two_n(n);
      CHECK(lp_bound_bside(n, two.size()).value <= average_distance(two));
      for (int w = 1; w <= n / 2; ++w) {
        const Code cw = construct_constant_weight(n, w);
        CHECK(lp_bound_bside(n, cw.size()).value <= average_distance(cw));
      }
    }
  }

  TEST_CASE("strengthened variants dominate the plain program") {
    for (int n = 2; n <= 10; ++n) {
      const std::uint64_t cap = std::min<std::uint64_t>(std::uint64_t{1} << n, 40);
      for (std::uint64_t M = 1; M <= cap; ++M) {
        INFO("n=", n, " M=", M);
        if (M % 2 == 1) CHECK(lp_bound_odd(n, M).value >= lp_bound_bside(n, M).value);
        if (M % 4 == 2 && n <= 8) CHECK(lp_bound_mod4(n, M).value >= lp_bound_bside(n, M).value);
      }
    }
  }

  TEST_CASE("family certificates are weaker than the LP on their side") {
    for (int n = 1; n <= 20; ++n) {
      std::vector<std::uint64_t> sizes{2, 4, static_cast<std::uint64_t>(n), std::uint64_t(2 * n),
                                       std::uint64_t{1} << (n - 1)};
      for (auto M : sizes) {
        if (M < 1 || M > (std::uint64_t{1} << n)) continue;
        const Rational lp = lp_bound_bside(n, M).value;
        for (auto f : builtin_families()) {
          if (!family_applies(f, n)) continue;
          INFO(family_id(f), " n=", n, " M=", M);
          CHECK(certificate_bound(build_family(f, n), M) <= lp);
        }
      }
    }
  }

  TEST_CASE("optimal duals convert to valid certificates that reproduce the LP value") {
    for (int n = 2; n <= 12; ++n) {
      for (std::uint64_t M : {std::uint64_t{2}, std::uint64_t{3}, static_cast<std::uint64_t>(n),
                              std::uint64_t(2 * n), std::uint64_t{1} << (n - 1)}) {
        for (auto v : {LpVariant::BSide, LpVariant::ASide}) {
          const auto d = lp_bound_detail(v, n, M);
          REQUIRE(d.solution.status == LpStatus::Optimal);
          const Certificate cert = certificate_from_dual(d);
          INFO(variant_name(v), " n=", n, " M=", M);
          CHECK(cert.side == (v == LpVariant::BSide ? Side::Lambda : Side::Alpha));
          CHECK(verify_certificate(cert).valid());
          CHECK(certificate_formula(cert, M) == (Rational(n) - d.b1_max) / 2);
        }
      }
    }
    CHECK_THROWS_AS(certificate_from_dual(lp_bound_detail(LpVariant::Odd, 3, 3)), DomainError);
  }

  TEST_CASE("variant names") {
    for (auto v : {LpVariant::BSide, LpVariant::ASide, LpVariant::Odd, LpVariant::Mod4}) {
      CHECK(parse_variant(variant_name(v)) == v);
    }
    CHECK_FALSE(parse_variant("simplex").has_value());
  }
}
