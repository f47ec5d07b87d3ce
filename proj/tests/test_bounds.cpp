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

#include <algorithm>
#include <thread>

#include "avgdist/bounds.hpp"
#include "avgdist/codes.hpp"
#include "avgdist/search.hpp"

using namespace avgdist;

namespace {

bool has_tag(const std::vector<BoundResult>& rs, const std::string& tag) {
  return std::any_of(rs.begin(), rs.end(), [&](const BoundResult& r) {
    return !r.provenance.empty() && r.provenance.front() == tag;
  });
}

std::optional<Rational> tag_value(const std::vector<BoundResult>& rs, const std::string& tag) {
  for (const auto& r : rs) {
    if (!r.provenance.empty() && r.provenance.front() == tag) return r.value;
  }
  return std::nullopt;
}

BoundResult exact(int n, std::uint64_t M, Rational v) {
  return BoundResult{n, M, Direction::Lower, std::move(v), {"exact:test"}};
}

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("exact small-M values") {
    CHECK(exact_small_M(5, 6) == make_rational(25, 18));
    CHECK(exact_small_M(7, 8) == make_rational(3, 2));
    CHECK(exact_small_M(9, 4) == Rational(1));
    CHECK_FALSE(exact_small_M(3, 7).has_value());
    CHECK(exact_small_M(3, 1) == Rational(0));
    CHECK(exact_small_M(3, 4) == Rational(1));
    CHECK_FALSE(exact_small_M(2, 4).has_value());  // M = 4 still needs M <= n + 1
    CHECK_FALSE(exact_small_M(6, 8).has_value());
  }

  TEST_CASE("closed-form examples") {
    const auto a = closed_form_lower(4, 8);
    CHECK(tag_value(a, "closed:althofer-sillke") == make_rational(3, 2));
    CHECK(tag_value(a, "closed:fu-wei-yeu-half") == make_rational(3, 2));
    const auto b = closed_form_lower(8, 16);
    CHECK(tag_value(b, "closed:three-zeros") == make_rational(19, 10));
    CHECK(tag_value(b, "closed:four-zeros") == make_rational(19, 10));
    for (const auto& r : closed_form_lower(10, 3)) CHECK(sgn(r.value) >= 0);
  }

  TEST_CASE("closed forms respect their guards") {
    // Odd-M formulas absent for even M, and vice versa.
    CHECK_FALSE(has_tag(closed_form_lower(6, 8), "closed:xia-fu-odd"));
    CHECK(has_tag(closed_form_lower(6, 9), "closed:xia-fu-odd"));
    CHECK_FALSE(has_tag(closed_form_lower(6, 8), "closed:fu-wei-yeu-mod4"));
    CHECK(has_tag(closed_form_lower(6, 10), "closed:fu-wei-yeu-mod4"));
    // Size guards.
    CHECK(has_tag(closed_form_lower(5, 16), "closed:fu-wei-yeu-half"));
    CHECK_FALSE(has_tag(closed_form_lower(5, 17), "closed:fu-wei-yeu-half"));
    CHECK(has_tag(closed_form_lower(5, 15), "closed:fu-wei-yeu-odd"));
    CHECK_FALSE(has_tag(closed_form_lower(5, 17), "closed:fu-wei-yeu-odd"));
    // Length guards.
    CHECK_FALSE(has_tag(closed_form_lower(2, 3), "closed:parity-lambda"));
    CHECK(has_tag(closed_form_lower(3, 3), "closed:parity-lambda"));
    CHECK_FALSE(has_tag(closed_form_lower(1, 2), "closed:two-zeros"));
    CHECK_FALSE(has_tag(closed_form_lower(1, 2), "closed:three-zeros"));
    CHECK_FALSE(has_tag(closed_form_lower(3, 5), "closed:four-zeros"));
    CHECK(has_tag(closed_form_lower(4, 5), "closed:four-zeros"));
    CHECK_THROWS_AS(closed_form_lower(3, 9), DomainError);
    CHECK_THROWS_AS(closed_form_lower(3, 0), DomainError);
  }

  TEST_CASE("complement transfer examples") {
    const auto self = complement_transfer(3, 4, exact(3, 4, 1));
    CHECK(self.M == 4);
    CHECK(self.value == 1);
    const auto six = complement_transfer(3, 2, exact(3, 2, make_rational(1, 2)));
    CHECK(six.M == 6);
    CHECK(six.value == make_rational(25, 18));
    CHECK(six.provenance.front().rfind("complement(from M=2)", 0) == 0);
    CHECK_THROWS_AS(complement_transfer(3, 8, exact(3, 8, make_rational(3, 2))), DomainError);
    CHECK_THROWS_AS(complement_transfer(3, 2, exact(3, 2, 2)), DomainError);
  }

  TEST_CASE("complement transfer is an involution") {
    for (int n = 2; n <= 8; ++n) {
      const std::uint64_t full = std::uint64_t{1} << n;
      for (std::uint64_t M = 1; M < full; M += 1 + M / 5) {
        const Rational v = make_rational(static_cast<long>(M % 7), 7) * n / 2;
        const auto once = complement_transfer(n, M, exact(n, M, v));
        const auto twice = complement_transfer(n, full - M, once);
        CHECK(twice.M == M);
        CHECK(twice.value == v);
      }
    }
  }

  TEST_CASE("xf recursion examples") {
    CHECK(recursive_xf(6, 3, 0) == 0);
    const Rational half = make_rational(6, 2);
    const Rational expect = Rational(3) * (9 + 6) / 16;  // (n/2)(M^2 + 2M)/(M+1)^2
    CHECK(recursive_xf(6, 3, half) == expect);
    CHECK(recursive_xf(4, 2, make_rational(1, 2)) < recursive_monotone(4, 2, make_rational(1, 2)));
    CHECK_THROWS_AS(recursive_xf(4, 2, make_rational(5, 2)), DomainError);
    CHECK_THROWS_AS(recursive_xf(4, 2, make_rational(-1, 2)), DomainError);
  }

  TEST_CASE("xf rounding brackets the value tightly") {
    const Rational eps(Integer(1), Integer("1000000000000000000000000000000"));
    for (int n : {2, 7, 30, 200}) {
      for (std::uint64_t M : {1u, 2u, 9u, 1000u}) {
        for (int k = 0; k <= 10; ++k) {
          const Rational b = make_rational(n, 2) * make_rational(k, 10);
          const Rational lo = recursive_xf(n, M, b, Rounding::Down);
          const Rational hi = recursive_xf(n, M, b, Rounding::Up);
          CHECK(lo <= hi);
          CHECK(hi - lo < eps);
        }
      }
    }
    // A perfect square is exact both ways: b = 3n/8 gives s = 1/4.
    CHECK(recursive_xf(8, 3, 3, Rounding::Down) == recursive_xf(8, 3, 3, Rounding::Up));
  }

  TEST_CASE("monotone recursion examples") {
    CHECK(recursive_monotone(5, 2, make_rational(1, 2)) == make_rational(2, 3));
    CHECK(recursive_monotone(5, 7, 0) == 0);
    CHECK(recursive_monotone(4, 3, make_rational(8, 9)) == 1);
    CHECK_THROWS_AS(recursive_monotone(4, 1, make_rational(1, 2)), DomainError);
  }

  TEST_CASE("monotone recursion dominates xf on a grid") {
    for (int n = 2; n <= 50; n += 6) {
      for (std::uint64_t M = 2; M <= 50; M += 6) {
        const Rational m(static_cast<long>(M));
        const Rational top = (m * m - 1) / (m * m) * n / 2;
        for (int k = 0; k <= 20; ++k) {
          const Rational b = top * make_rational(k, 20);
          CHECK(recursive_monotone(n, M, b) >= recursive_xf(n, M, b, Rounding::Up));
        }
      }
    }
  }

  TEST_CASE("aggregator examples") {
    const auto a = best_lower(3, 4);
    CHECK(a.value == 1);
    CHECK(std::find(a.provenance.begin(), a.provenance.end(), "lp:bside") != a.provenance.end());
    CHECK(a.provenance.front() == "exact:small-m");
    CHECK(best_lower(8, 16).value >= make_rational(19, 10));
    CHECK(best_lower(4, 16).value == 2);
    CHECK_THROWS_AS(best_lower(3, 9), DomainError);
    CHECK_THROWS_AS(best_lower(0, 1), DomainError);
  }

  TEST_CASE("aggregator grows at least by the monotone factor") {
    for (int n = 3; n <= 6; ++n) {
      BoundEngine engine;
      for (std::uint64_t M = 2; M < (std::uint64_t{1} << n); ++M) {
        const Rational m(static_cast<long>(M));
        INFO("n=", n, " M=", M);
        CHECK(engine.best_lower(n, M + 1).value >= m * m / (m * m - 1) * engine.best_lower(n, M).value);
      }
    }
  }

  TEST_CASE("aggregator dominates each direct candidate") {
    BoundEngine engine;
    for (int n : {5, 9}) {
      for (std::uint64_t M : {3u, 10u, 18u, 31u}) {
        const auto best = engine.best_lower(n, M);
        for (const auto& c : engine.direct_lower_candidates(n, M)) CHECK(c.value <= best.value);
      }
    }
  }

  TEST_CASE("lower bounds stay below upper bounds") {
    for (int n = 2; n <= 7; ++n) {
      BoundEngine engine;
      for (std::uint64_t M = 1; M <= (std::uint64_t{1} << n); ++M) {
        const auto lo = engine.best_lower(n, M);
        const auto up = engine.best_upper(n, M);
        if (up) CHECK(lo.value <= up->value);
      }
    }
  }

  TEST_CASE("upper bounds come from constructions") {
    const auto u = best_upper(4, 8);
    REQUIRE(u.has_value());
    CHECK(u->value == make_rational(13, 8));
    CHECK(u->direction == Direction::Upper);
    const auto full = best_upper(5, 32);
    REQUIRE(full.has_value());
    CHECK(full->value == make_rational(5, 2));
    const auto cw = best_upper(5, 10);
    REQUIRE(cw.has_value());
    CHECK(cw->value <= average_distance(construct_constant_weight(5, 2)));
    CHECK(cw->value <= two_n_average_distance(5));
    CHECK_FALSE(best_upper(6, 23).has_value());
  }

  TEST_CASE("ties keep every tag, highest priority first") {
    BoundResult a{3, 4, Direction::Lower, 1, {"recursion:monotone(from M=3)"}};
    BoundResult b{3, 4, Direction::Lower, 1, {"lp:bside"}};
    BoundResult c{3, 4, Direction::Lower, 1, {"exact:small-m"}};
    const auto t = combine(combine(a, b), c);
    CHECK(t.provenance == std::vector<std::string>{"exact:small-m", "lp:bside", "recursion:monotone(from M=3)"});
    BoundResult d{3, 4, Direction::Lower, 2, {"closed:x"}};
    CHECK(combine(t, d).provenance == std::vector<std::string>{"closed:x"});
    BoundResult up1{3, 4, Direction::Upper, 2, {"a"}}, up2{3, 4, Direction::Upper, 1, {"b"}};
    CHECK(combine(up1, up2).value == 1);
  }

  TEST_CASE("engine is safe to share between threads") {
    BoundEngine engine;
    std::vector<Rational> got(4);
    std::vector<std::thread> ts;
    for (int t = 0; t < 4; ++t) ts.emplace_back([&, t] { got[t] = engine.best_lower(6, 20 + t % 2).value; });
    for (auto& t : ts) t.join();
    CHECK(got[0] == got[2]);
    CHECK(got[1] == got[3]);
    CHECK(got[0] == BoundEngine().best_lower(6, 20).value);
  }

  TEST_CASE("LP can be switched off") {
    BoundOptions opts;
    opts.use_lp = false;
    const auto r = best_lower(8, 16, opts);
    for (const auto& tag : r.provenance) CHECK(tag.find("lp:") == std::string::npos);
    CHECK(r.value == make_rational(19, 10));
  }
}
