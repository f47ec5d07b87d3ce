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

#include "avgdist/bounds.hpp"

#include <algorithm>
#include <stdexcept>

#include "avgdist/codes.hpp"
#include "avgdist/krawtchouk.hpp"
#include "avgdist/lp.hpp"
#include "avgdist/search.hpp"

namespace avgdist {

namespace {

Rational rat(std::uint64_t v) { return Rational(Integer(static_cast<unsigned long>(v))); }

Rational two_pow(int e) {
  if (e >= 0) return Rational(pow2(static_cast<unsigned>(e)));
  return Rational(Integer(1), pow2(static_cast<unsigned>(-e)));
}

Rational clamp_zero(Rational v) { return sgn(v) < 0 ? Rational(0) : v; }

int tag_priority(const std::string& tag) {
  static const std::pair<const char*, int> kOrder[] = {
      {"exact", 0}, {"lp", 1}, {"closed", 2}, {"construction", 2},
      {"complement", 3}, {"recursion", 4}, {"trivial", 5},
  };
  for (const auto& [prefix, rank] : kOrder) {
    if (tag.rfind(prefix, 0) == 0) return rank;
  }
  return 6;
}

constexpr std::string_view kChainSep = " <- ";

// A derived bound is one tag: the step, then the winning chain it came from.
std::string chain(const std::string& step, const BoundResult& from) {
  if (from.provenance.empty()) return step;
  return step + std::string(kChainSep) + from.provenance.front();
}

BoundResult lower(int n, std::uint64_t M, Rational v, std::string tag) {
  return BoundResult{n, M, Direction::Lower, clamp_zero(std::move(v)), {std::move(tag)}};
}

}  // namespace

std::optional<Rational> exact_small_M(int n, std::uint64_t M) {
  if (M == 0) return std::nullopt;
  if (M == 1) return Rational(0);
  if (n < 1 || M > static_cast<std::uint64_t>(n) + 1) return std::nullopt;
  if (M == 4) return Rational(1);
  if (M == 8) return Rational(3, 2);
  const Rational r(Integer(static_cast<unsigned long>(M - 1)), Integer(static_cast<unsigned long>(M)));
  return 2 * r * r;
}

std::vector<BoundResult> closed_form_lower(int n, std::uint64_t M) {
  require_code_size(n, M);
  std::vector<BoundResult> out;
  const Rational m = rat(M);
  const Rational N(n);
  const Rational half_space = two_pow(n - 1);   // 2^(n-1)
  const Rational quarter_space = two_pow(n - 2);  // 2^(n-2)
  const Rational space = two_pow(n);
  const bool odd = M % 2 == 1;

  out.push_back(lower(n, M, (N + 1) / 2 - half_space / m, "closed:althofer-sillke"));
  if (odd) {
    out.push_back(lower(n, M, (N + 1) / 2 - half_space / m + (space - N - 1) / (2 * m * m),
                        "closed:xia-fu-odd"));
  }
  if (M % 4 == 2) {
    out.push_back(lower(n, M, (N + 1) / 2 - half_space / m + (space - 2 * N) / (m * m),
                        "closed:fu-wei-yeu-mod4"));
  }
  if (m <= half_space) {
    out.push_back(lower(n, M, N / 2 - quarter_space / m, "closed:fu-wei-yeu-half"));
  }
  if (odd && m <= half_space - 1) {
    out.push_back(lower(n, M, N / 2 - quarter_space / m + (half_space - N) / (2 * m * m),
                        "closed:fu-wei-yeu-odd"));
  }
  if (n > 2) {
    const Rational den = n % 2 == 0 ? N - 2 : N - 1;
    out.push_back(lower(n, M, N / 2 - quarter_space / m + (quarter_space / m - 1) / den,
                        "closed:parity-lambda"));
  }
  out.push_back(lower(n, M, 1 - 1 / m, "closed:one-zero"));
  if (n >= 2) out.push_back(lower(n, M, Rational(3, 2) - 2 / m, "closed:two-zeros"));
  if (n % 2 == 0) {
    out.push_back(lower(n, M, 3 * N / (N + 2) - N / m, "closed:three-zeros"));
  } else if (n > 1) {
    out.push_back(lower(n, M, 3 * (N + 1) / (N + 3) - (N + 1) / m, "closed:three-zeros"));
  }
  if (n > 3) {
    Rational v;
    switch (n % 4) {
      case 0: v = (7 * N + 2) / (2 * (N + 2)) - 2 * N / m; break;
      case 1: v = (7 * N - 5) / (2 * (N + 1)) - 2 * (N - 1) / m; break;
      case 2: v = (7 * N + 16) / (2 * (N + 4)) - 2 * (N + 2) / m; break;
      default: v = (7 * N + 9) / (2 * (N + 3)) - 2 * (N + 1) / m; break;
    }
    out.push_back(lower(n, M, v, "closed:four-zeros"));
  }
  return out;
}

BoundResult complement_transfer(int n, std::uint64_t M, const BoundResult& known) {
  if (n < 1 || n >= 64) throw DomainError("complement_transfer needs 1 <= n < 64");
  const std::uint64_t full = std::uint64_t{1} << n;
  if (M == 0 || M >= full) {
    throw DomainError("complement_transfer needs 1 <= M <= 2^n - 1, got M=" + std::to_string(M));
  }
  if (known.n != n || known.M != M) throw DomainError("complement_transfer: bound is for another (n, M)");
  const Rational half_n = Rational(n) / 2;
  if (known.value > half_n) throw DomainError("complement_transfer: bound exceeds n/2");
  const Rational m = rat(M);
  const Rational mc = rat(full - M);
  BoundResult out;
  out.n = n;
  out.M = full - M;
  out.direction = known.direction;
  out.value = half_n - (m * m) / (mc * mc) * (half_n - known.value);
  out.provenance.push_back(chain("complement(from M=" + std::to_string(M) + ")", known));
  return out;
}

Rational recursive_xf(int n, std::uint64_t M, const Rational& b, Rounding rounding) {
  if (n < 1) throw DomainError("recursive_xf needs n >= 1");
  if (M == 0) throw DomainError("recursive_xf needs M >= 1");
  const Rational half_n = Rational(n) / 2;
  if (sgn(b) < 0 || b > half_n) throw DomainError("recursive_xf needs 0 <= b <= n/2");
  const Rational m = rat(M);
  const Rational m1 = m + 1;
  const Rational s = 1 - 2 * b / n;  // in [0, 1]

  // sqrt(p/q) = sqrt(p q) / q, bracketed with K fractional bits:
  // t <= sqrt(p q 4^K) < t + 1.
  const unsigned K = 112 + static_cast<unsigned>(mpz_sizeinbase(Integer(n).get_mpz_t(), 2));
  const Integer pq = s.get_num() * s.get_den();
  Integer scaled = pq;
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * K);
  Integer t = isqrt(scaled);
  const bool exact = t * t == scaled;
  // A lower bound on the result needs an upper bound on the root.
  if (!exact && rounding == Rounding::Down) t += 1;
  const Rational root = make_rational(t, s.get_den() * pow2(K));
  return m * m / (m1 * m1) * b + m * n / (m1 * m1) * (1 - root);
}

Rational recursive_monotone(int n, std::uint64_t M, const Rational& b) {
  if (n < 1) throw DomainError("recursive_monotone needs n >= 1");
  if (M < 2) throw DomainError("recursive_monotone needs M >= 2 (M^2 - 1 vanishes at M = 1)");
  const Rational m = rat(M);
  return m * m / (m * m - 1) * b;
}

BoundResult combine(const BoundResult& a, const BoundResult& b) {
  const bool take_b = a.direction == Direction::Lower ? b.value > a.value : b.value < a.value;
  if (a.value != b.value) return take_b ? b : a;
  BoundResult out = a;
  for (const auto& tag : b.provenance) {
    if (std::find(out.provenance.begin(), out.provenance.end(), tag) == out.provenance.end()) {
      out.provenance.push_back(tag);
    }
  }
  std::stable_sort(out.provenance.begin(), out.provenance.end(),
                   [](const std::string& x, const std::string& y) {
                     return tag_priority(x) < tag_priority(y);
                   });
  return out;
}

BoundEngine::BoundEngine(BoundOptions options) : options_(options) {}

std::vector<BoundResult> BoundEngine::direct_lower_candidates(int n, std::uint64_t M) {
  return candidates(n, M, true);
}

std::vector<BoundResult> BoundEngine::candidates(int n, std::uint64_t M, bool full_lp) {
  require_code_size(n, M);
  std::vector<BoundResult> out;
  out.push_back(BoundResult{n, M, Direction::Lower, Rational(0), {"trivial:zero"}});
  if (auto exact = exact_small_M(n, M)) {
    out.push_back(BoundResult{n, M, Direction::Lower, *exact, {"exact:small-m"}});
  }
  for (auto& r : closed_form_lower(n, M)) out.push_back(std::move(r));
  if (options_.use_lp && n <= options_.lp_max_n) {
    out.push_back(lp_bound_bside(n, M));
    if (M % 2 == 1) out.push_back(lp_bound_odd(n, M));
    if (full_lp) {
      out.push_back(lp_bound_aside(n, M));
      if (M % 4 == 2) out.push_back(lp_bound_mod4(n, M));
    }
  }
  return out;
}

BoundResult BoundEngine::direct_lower(int n, std::uint64_t M, bool full_lp) {
  std::lock_guard lock(mu_);
  const auto key = std::make_tuple(n, M, full_lp);
  if (auto it = direct_cache_.find(key); it != direct_cache_.end()) return it->second;
  auto all = candidates(n, M, full_lp);
  BoundResult best = all.front();
  for (std::size_t i = 1; i < all.size(); ++i) best = combine(best, all[i]);
  direct_cache_.emplace(key, best);
  return best;
}

namespace {

BoundResult recursion_step(int n, std::uint64_t M, const BoundResult& prev) {
  // prev is a lower bound at M-1; carry it to M.
  const std::uint64_t from = M - 1;
  BoundResult best{n, M, Direction::Lower, Rational(0), {"trivial:zero"}};
  auto tagged = [&](const std::string& kind, Rational v) {
    BoundResult r{n, M, Direction::Lower, std::move(v), {}};
    std::string steps = kind;
    std::string origin = std::to_string(from);
    std::string rest = prev.provenance.empty() ? std::string() : prev.provenance.front();
    // Collapse a run of recursion steps into one tag naming where it began.
    if (rest.rfind("recursion:", 0) == 0) {
      const auto open = rest.find("(from M=");
      const auto close = rest.find(')', open);
      const std::string prev_steps = rest.substr(10, open - 10);
      origin = rest.substr(open + 8, close - open - 8);
      if (prev_steps != kind) steps = "monotone+xf";
      const auto arrow = rest.find(kChainSep);
      rest = arrow == std::string::npos ? std::string() : rest.substr(arrow + kChainSep.size());
    }
    std::string tag = "recursion:" + steps + "(from M=" + origin + ")";
    if (!rest.empty()) tag += std::string(kChainSep) + rest;
    r.provenance.push_back(std::move(tag));
    return r;
  };
  if (from >= 2) best = combine(best, tagged("monotone", recursive_monotone(n, from, prev.value)));
  if (from >= 1 && prev.value <= Rational(n) / 2) {
    best = combine(best, tagged("xf", recursive_xf(n, from, prev.value, Rounding::Down)));
  }
  return best;
}

}  // namespace

void BoundEngine::extend_lane(int n, Lane& lane, std::uint64_t M) {
  const bool small_space = n < 64;
  const std::uint64_t full = small_space ? std::uint64_t{1} << n : 0;
  while (lane.core.size() < M) {
    const std::uint64_t m = lane.core.size() + 1;
    BoundResult core = direct_lower(n, m, n <= options_.sweep_full_lp_max_n);
    BoundResult best = core;
    if (m >= 2) {
      core = combine(core, recursion_step(n, m, lane.core[m - 2]));
      best = combine(core, recursion_step(n, m, lane.best[m - 2]));
    }
    // Complement from the already-computed side only (2^n - m < m).
    if (small_space && m < full && full - m < m) {
      best = combine(best, complement_transfer(n, full - m, lane.core[full - m - 1]));
    }
    lane.core.push_back(std::move(core));
    lane.best.push_back(std::move(best));
  }
}

BoundResult BoundEngine::best_lower(int n, std::uint64_t M) {
  require_code_size(n, M);
  std::lock_guard lock(mu_);
  BoundResult result;
  if (M <= options_.recursion_limit) {
    auto& lane = lanes_[n];
    extend_lane(n, lane, M);
    result = combine(lane.best[M - 1], direct_lower(n, M, true));
  } else {
    result = direct_lower(n, M, true);
    if (n < 64) {
      const std::uint64_t other = (std::uint64_t{1} << n) - M;
      if (other >= 1 && other < M) {
        result = combine(result, complement_transfer(n, other, direct_lower(n, other, true)));
      }
    }
  }
  if (auto up = best_upper(n, M); up && result.value > up->value) {
    throw std::logic_error("lower bound " + to_fraction_string(result.value) +
                           " exceeds upper bound " + to_fraction_string(up->value) + " at n=" +
                           std::to_string(n) + " M=" + std::to_string(M));
  }
  return result;
}

std::optional<BoundResult> BoundEngine::upper_direct(int n, std::uint64_t M) {
  std::lock_guard lock(mu_);
  const auto key = std::make_pair(n, M);
  if (auto it = upper_cache_.find(key); it != upper_cache_.end()) return it->second;

  std::optional<BoundResult> best;
  auto offer = [&](Rational v, std::string tag) {
    BoundResult r{n, M, Direction::Upper, std::move(v), {std::move(tag)}};
    best = best ? combine(*best, r) : r;
  };
  if (auto exact = exact_small_M(n, M)) offer(*exact, "exact:small-m");
  if (n < 64 && M == (std::uint64_t{1} << n)) offer(Rational(n) / 2, "construction:full-space");
  if (n >= 2 && M == 2 * static_cast<std::uint64_t>(n) && M <= options_.construction_max_words) {
    offer(average_distance(construct_two_n(n)), "construction:two-n");
  }
  if (M <= options_.construction_max_words) {
    for (int w = 0; w <= n / 2; ++w) {
      if (binomial(n, w) == Integer(static_cast<unsigned long>(M))) {
        offer(average_distance(construct_constant_weight(n, w, options_.construction_max_words)),
              "construction:constant-weight(w=" + std::to_string(w) + ")");
        break;
      }
      if (binomial(n, w) > Integer(static_cast<unsigned long>(M))) break;
    }
  }
  upper_cache_.emplace(key, best);
  return best;
}

std::optional<BoundResult> BoundEngine::best_upper(int n, std::uint64_t M) {
  require_code_size(n, M);
  std::lock_guard lock(mu_);
  auto best = upper_direct(n, M);
  if (n < 64) {
    const std::uint64_t full = std::uint64_t{1} << n;
    if (M < full) {
      if (auto other = upper_direct(n, full - M)) {
        auto moved = complement_transfer(n, full - M, *other);
        best = best ? combine(*best, moved) : moved;
      }
    }
  }
  return best;
}

BoundResult best_lower(int n, std::uint64_t M, const BoundOptions& options) {
  BoundEngine engine(options);
  return engine.best_lower(n, M);
}

std::optional<BoundResult> best_upper(int n, std::uint64_t M, const BoundOptions& options) {
  BoundEngine engine(options);
  return engine.best_upper(n, M);
}

}  // namespace avgdist
