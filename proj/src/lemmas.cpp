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

#include "avgdist/lemmas.hpp"

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <functional>

#include "avgdist/krawtchouk.hpp"
#include "avgdist/rational.hpp"

namespace avgdist {

namespace {

struct PerN {
  std::uint64_t checked = 0;
  std::vector<Counterexample> found;
};

using CheckFn = std::function<PerN(int)>;

// Runs `check` for every n in `ns`, in parallel or serially; results are
// merged in the order of `ns`, so reports do not depend on scheduling.
SweepReport sweep(std::string lemma, std::string range, const std::vector<int>& ns,
                  const CheckFn& check, const SweepOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<PerN> parts(ns.size());
  if (opts.parallel) {
    const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::size_t k = 0; k < ns.size(); ++k) parts[k] = check(ns[k]);
  } else {
    for (std::size_t k = 0; k < ns.size(); ++k) parts[k] = check(ns[k]);
  }
  SweepReport report;
  report.lemma = std::move(lemma);
  report.range = std::move(range);
  for (auto& p : parts) {
    report.checked += p.checked;
    for (auto& c : p.found) report.counterexamples.push_back(std::move(c));
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<int> parity_range(int from, int n_max, int step) {
  std::vector<int> ns;
  for (int n = from; n <= n_max; n += step) ns.push_back(n);
  return ns;
}

std::string describe(const Rational& lhs, const char* rel, const Rational& rhs) {
  return to_fraction_string(lhs) + " " + rel + " " + to_fraction_string(rhs) + " fails";
}

// |P_i^n(x0)| < C(n, floor(i/2)) for 2 <= i <= i_max.
PerN estimation_at(int n, int x0, int i_max) {
  PerN out;
  const auto column = kraw_column(n, x0);
  for (int i = 2; i <= i_max; ++i) {
    ++out.checked;
    const Integer value = abs(column[i]);
    const Integer cap = binomial(n, i / 2);
    if (!(value < cap)) {
      out.found.push_back({n, i, "|P_" + std::to_string(i) + "(" + std::to_string(x0) + ")| = " +
                                     value.get_str() + " is not below " + cap.get_str()});
    }
  }
  return out;
}

// (i - shift) C(n,i) / C(n, floor(i/2)) > rhs for i_min <= i <= i_max.
PerN monotone_ratio(int n, int shift, int i_min, int i_max, const Rational& rhs) {
  PerN out;
  for (int i = i_min; i <= i_max; ++i) {
    ++out.checked;
    const Rational lhs = make_rational(Integer(i - shift) * binomial(n, i), binomial(n, i / 2));
    if (!(lhs > rhs)) out.found.push_back({n, i, describe(lhs, ">", rhs)});
  }
  return out;
}

void expect_equal(PerN& out, int n, int i, const std::string& what, const Rational& got,
                  const Rational& want) {
  ++out.checked;
  if (got != want) {
    out.found.push_back({n, i, what + ": got " + to_fraction_string(got) + ", expected " +
                                   to_fraction_string(want)});
  }
}

Rational q(long num, long den = 1) { return make_rational(num, den); }

PerN midpoint_values(int n) {
  PerN out;
  const int x0 = n / 2 + 1;
  const auto mid = kraw_column(n, x0);
  const long N = n;
  const Rational closed[] = {
      q(-2), q(4 - N, 2), q(N - 2), q((N - 2) * (N - 8), 8), q((N - 2) * (4 - N), 4),
  };
  for (int i = 1; i <= 5 && i <= n; ++i) {
    expect_equal(out, n, i, "P_" + std::to_string(i) + "(n/2+1)", Rational(mid[i]), closed[i - 1]);
  }

  // Majorant a(i): the certificate term w P_{x0}(i) rewritten through the
  // symmetry C(n,i) P_{x0}(i) = C(n,x0) P_i(x0), with |.| applied.
  const Rational base = q(N * (4 - N), N + 2);
  auto majorant = [&](int i) -> Rational {
    const Rational p1(kraw_value(n, 1, i));
    const Rational c = make_rational(4 * binomial(n, 2), Integer(N + 2) * binomial(n, i));
    return base + p1 + c * Rational(abs(mid[i]));
  };
  expect_equal(out, n, n, "a(n)", majorant(n), q(0));
  expect_equal(out, n, n - 1, "a(n-1)", majorant(n - 1), q(2 * N * (4 - N), N + 2));
  expect_equal(out, n, n - 2, "a(n-2)", majorant(n - 2), q(2 * N * (4 - N), N + 2));
  expect_equal(out, n, n - 3, "a(n-3)", majorant(n - 3), q(2 * (6 - N)));
  if (n >= 8) {
    expect_equal(out, n, 4, "a(4)", majorant(4), q(-2) - q(6, N - 3));
    expect_equal(out, n, 5, "a(5)", majorant(5), q(-4) - q(12 * (N - 8), (N + 2) * (N - 3)));
  }

  // The signed polynomial vanishes at 1, 2, 3.
  const Rational w = make_rational(4 * binomial(n, 2), Integer(N + 2) * binomial(n, x0));
  for (int x = 1; x <= 3 && x <= n; ++x) {
    const Rational value = base + Rational(kraw_value(n, 1, x)) + w * Rational(kraw_value(n, x0, x));
    expect_equal(out, n, x, "alpha(" + std::to_string(x) + ")", value, q(0));
  }
  return out;
}

PerN mod4_values(int n) {
  PerN out;
  const long N = n;
  const int h = (n + 1) / 2;
  const Rational c0 = q((1 - N) * (N - 5), N + 1);
  const Rational w = make_rational(Integer(4 * N * (N - 2)), Integer(N + 1) * binomial(n, h));
  auto alpha = [&](int x) -> Rational {
    const auto col = kraw_column(n, x);
    return c0 + Rational(col[1]) + w * Rational(col[h]) + Rational(col[n]);
  };
  auto at = [&](int x, const Rational& want) {
    expect_equal(out, n, x, "alpha(" + std::to_string(x) + ")", alpha(x), want);
  };
  at(0, q(4 * (N - 1)));
  for (int x = 1; x <= 4; ++x) at(x, q(0));
  at(5, q(4 * (1 - N), N - 4));
  at(6, q(4 * (1 - N), N - 4));
  at(n, q(-6 * (N - 1) * (N - 1), N + 1));
  for (int k = 1; k <= 4; ++k) at(n - k, q(-2 * (N - 5) * (N - 1), N + 1));
  const Rational tail = q(-2 * (N - 9) * (N - 2) * (N - 1), (N + 1) * (N - 4));
  at(n - 5, tail);
  at(n - 6, tail);
  return out;
}

int env_n_max(int fallback) {
  if (const char* v = std::getenv("AVGDIST_NMAX")) {
    char* end = nullptr;
    const long parsed = std::strtol(v, &end, 10);
    if (end != v && *end == '\0' && parsed > 0 && parsed < 100000) return static_cast<int>(parsed);
  }
  return fallback;
}

std::string range_text(const char* parity, int from, int n_max) {
  return std::string(parity) + " n in [" + std::to_string(from) + ", " + std::to_string(n_max) + "]";
}

}  // namespace

int default_n_max_even() { return env_n_max(200); }
int default_n_max_odd() { return env_n_max(201); }

SweepReport check_estimation_even(int n_max, const SweepOptions& opts) {
  return sweep("estimation-even", range_text("even", 2, n_max), parity_range(2, n_max, 2),
               [](int n) { return estimation_at(n, n / 2 + 1, n / 2); }, opts);
}

SweepReport check_monotone_even(int n_max, const SweepOptions& opts) {
  return sweep("monotone-even", range_text("even", 2, n_max), parity_range(2, n_max, 2),
               [](int n) {
                 return monotone_ratio(n, 3, 6, n / 2, q(static_cast<long>(n) * (n - 1), n + 2));
               },
               opts);
}

SweepReport check_estimation_odd(int n_max, const SweepOptions& opts) {
  return sweep("estimation-odd", range_text("odd", 1, n_max), parity_range(1, n_max, 2),
               [](int n) { return estimation_at(n, (n + 1) / 2, (n - 1) / 2); }, opts);
}

SweepReport check_monotone_odd(int n_max, const SweepOptions& opts) {
  return sweep("monotone-odd", range_text("odd", 1, n_max), parity_range(1, n_max, 2),
               [](int n) {
                 return monotone_ratio(n, 4, 7, (n - 1) / 2,
                                       q(2L * n * (n - 2), n + 1));
               },
               opts);
}

SweepReport check_midpoint_values(int n) {
  if (n < 4 || n % 2 != 0) {
    throw DomainError("midpoint values need even n >= 4, got n=" + std::to_string(n));
  }
  return sweep("midpoint", "n = " + std::to_string(n), {n}, midpoint_values, {false, 1});
}

SweepReport check_midpoint_sweep(int n_max, const SweepOptions& opts) {
  return sweep("midpoint", range_text("even", 4, n_max), parity_range(4, n_max, 2),
               midpoint_values, opts);
}

SweepReport check_mod4_alpha_values(int n) {
  if (n < 9 || n % 4 != 1) {
    throw DomainError("mod-4 values need n = 1 mod 4 and n >= 9, got n=" + std::to_string(n));
  }
  return sweep("mod4", "n = " + std::to_string(n), {n}, mod4_values, {false, 1});
}

SweepReport check_mod4_sweep(int n_max, const SweepOptions& opts) {
  return sweep("mod4", "n = 1 mod 4, n in [9, " + std::to_string(n_max) + "]",
               parity_range(9, n_max, 4), mod4_values, opts);
}

std::vector<SweepReport> run_all_sweeps(int n_max_even, int n_max_odd, const SweepOptions& opts) {
  return {
      check_estimation_even(n_max_even, opts), check_monotone_even(n_max_even, opts),
      check_estimation_odd(n_max_odd, opts),   check_monotone_odd(n_max_odd, opts),
      check_midpoint_sweep(n_max_even, opts),  check_mod4_sweep(n_max_odd, opts),
  };
}

std::vector<std::string> lemma_names() {
  return {"estimation-even", "monotone-even", "estimation-odd", "monotone-odd", "midpoint", "mod4"};
}

}  // namespace avgdist
