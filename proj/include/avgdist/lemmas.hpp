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

// Exhaustive exact checks of the Krawtchouk inequalities and special values
// the certificate families rely on. Every check evaluates Krawtchouk values
// and binomials directly; none reads the certificates module.

#include <cstdint>
#include <string>
#include <vector>

namespace avgdist {

struct Counterexample {
  int n = 0;
  int i = 0;  // index inside the sweep (degree or evaluation point)
  std::string detail;
};

struct SweepReport {
  std::string lemma;
  std::string range;
  std::uint64_t checked = 0;  // (n, i) pairs or values examined
  std::vector<Counterexample> counterexamples;
  double elapsed_seconds = 0;

  bool ok() const { return counterexamples.empty(); }
};

struct SweepOptions {
  bool parallel = true;  // OpenMP over n; serial path kept as reference
  int threads = 0;       // 0: OpenMP default
};

// Default upper ends of the sweeps: 200 for even n, 201 for odd n. The
// environment variable AVGDIST_NMAX, when set to a positive integer,
// replaces both.
int default_n_max_even();
int default_n_max_odd();

// |P_i^n(n/2 + 1)| < C(n, floor(i/2)) for even n <= n_max, 2 <= i <= n/2.
SweepReport check_estimation_even(int n_max, const SweepOptions& opts = {});

// (i-3) C(n,i) / C(n, floor(i/2)) > n(n-1)/(n+2) for even n <= n_max,
// 6 <= i <= n/2.
SweepReport check_monotone_even(int n_max, const SweepOptions& opts = {});

// |P_i^n((n+1)/2)| < C(n, floor(i/2)) for odd n <= n_max, 2 <= i <= (n-1)/2.
SweepReport check_estimation_odd(int n_max, const SweepOptions& opts = {});

// (i-4) C(n,i) / C(n, floor(i/2)) > 2n(n-2)/(n+1) for odd n <= n_max,
// 7 <= i <= (n-1)/2.
SweepReport check_monotone_odd(int n_max, const SweepOptions& opts = {});

// Closed forms of P_1..P_5 at n/2 + 1 and the endpoint values of the
// majorant
//   a(i) = n(4-n)/(n+2) + P_1(i) + 4 C(n,2) |P_i(n/2+1)| / ((n+2) C(n,i)).
// Requires even n >= 4 (DomainError otherwise).
SweepReport check_midpoint_values(int n);
SweepReport check_midpoint_sweep(int n_max, const SweepOptions& opts = {});

// Special values of
//   a(x) = (1-n)(n-5)/(n+1) + P_1(x) + 4n(n-2)/((n+1) C(n,(n+1)/2)) P_{(n+1)/2}(x) + P_n(x)
// for n = 1 mod 4, n >= 9 (DomainError otherwise).
SweepReport check_mod4_alpha_values(int n);
SweepReport check_mod4_sweep(int n_max, const SweepOptions& opts = {});

// All sweeps: the four inequality families, midpoint values for even n and
// mod-4 values for n = 1 mod 4, with the given upper ends.
std::vector<SweepReport> run_all_sweeps(int n_max_even, int n_max_odd, const SweepOptions& opts = {});

// CLI names: estimation-even, monotone-even, estimation-odd, monotone-odd,
// midpoint, mod4.
std::vector<std::string> lemma_names();

}  // namespace avgdist
