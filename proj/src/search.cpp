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

#include "avgdist/search.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <mutex>

#include "avgdist/krawtchouk.hpp"

namespace avgdist {

namespace {

using Word = std::uint32_t;
using Sum = std::uint64_t;  // sum of distances over unordered pairs

constexpr Sum kNoIncumbent = std::numeric_limits<Sum>::max();
// Per-candidate cost tables are kept when the space is at most this large.
constexpr std::uint64_t kCostTableMaxSpace = std::uint64_t{1} << 12;

void validate(const SearchConfig& cfg) {
  if (cfg.n < 1 || cfg.n > 31) {
    throw DomainError("search supports 1 <= n <= 31, got n=" + std::to_string(cfg.n));
  }
  if (cfg.n > 5 && !cfg.allow_large) {
    throw DomainError("search is limited to n <= 5 (n=" + std::to_string(cfg.n) +
                      "); set allow_large to override");
  }
  const std::uint64_t space = std::uint64_t{1} << cfg.n;
  if (cfg.M < 1 || cfg.M > space) {
    throw DomainError("search needs 1 <= M <= 2^n, got M=" + std::to_string(cfg.M));
  }
}

int dist(Word a, Word b) { return std::popcount(a ^ b); }

Rational beta_of(Sum s, std::uint64_t M) {
  return make_rational(Integer(static_cast<unsigned long>(s)) * 2,
                       Integer(static_cast<unsigned long>(M)) * static_cast<unsigned long>(M));
}

Code to_code(int n, const std::vector<Word>& words) {
  std::vector<std::uint64_t> w(words.begin(), words.end());
  return Code::from_integers(n, w);
}

bool atomic_lower(std::atomic<Sum>& target, Sum value) {
  Sum cur = target.load(std::memory_order_relaxed);
  while (value < cur) {
    if (target.compare_exchange_weak(cur, value, std::memory_order_relaxed)) return true;
  }
  return false;
}

struct Shared {
  int n = 0;
  std::uint64_t M = 0;
  Word space = 0;  // 2^n (fits: n <= 31)
  bool prune = true;
  bool all = false;
  bool tables = false;
  std::optional<std::uint64_t> budget;
  std::atomic<Sum> best{kNoIncumbent};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
};

// One worker's state: the current prefix, its pair sum and (when tables are
// on) cost[d][w] = sum of distances from w to the first d chosen words.
class Worker {
 public:
  explicit Worker(Shared& sh) : sh_(sh) {
    if (sh_.tables) {
      cost_.assign(static_cast<std::size_t>(sh_.M) + 1, std::vector<Sum>(sh_.space, 0));
      scratch_.reserve(sh_.space);
    }
  }

  // Start from a prefix (already distinct and increasing).
  void run_from(const std::vector<Word>& prefix) {
    chosen_.clear();
    Sum s = 0;
    for (Word w : prefix) s += push(w);
    dfs(s);
  }

  Sum local_best = kNoIncumbent;
  std::vector<std::vector<Word>> local_minimizers;

 private:
  Sum push(Word w) {
    Sum add = 0;
    if (sh_.tables) {
      const std::size_t d = chosen_.size();
      add = cost_[d][w];
      auto& next = cost_[d + 1];
      const auto& cur = cost_[d];
      for (Word x = 0; x < sh_.space; ++x) next[x] = cur[x] + static_cast<Sum>(dist(w, x));
    } else {
      for (Word c : chosen_) add += static_cast<Sum>(dist(c, w));
    }
    chosen_.push_back(w);
    return add;
  }

  void pop() { chosen_.pop_back(); }

  // Admissible lower bound on the final pair sum given the prefix.
  Sum bound(Sum s) {
    const std::uint64_t k = chosen_.size();
    const std::uint64_t r = sh_.M - k;
    // Distinct words are at distance >= 1.
    Sum future_pairs = r * (r - 1) / 2;
    if (!sh_.tables || r == 0) return s + future_pairs + r * k;
    // The r cheapest admissible candidates against the prefix.
    const Word start = chosen_.empty() ? 0 : chosen_.back() + 1;
    const auto& cur = cost_[k];
    scratch_.assign(cur.begin() + start, cur.end());
    if (scratch_.size() < r) return kNoIncumbent;
    std::nth_element(scratch_.begin(), scratch_.begin() + static_cast<long>(r - 1), scratch_.end());
    Sum cheapest = 0;
    for (std::uint64_t i = 0; i < r; ++i) cheapest += scratch_[i];
    return s + cheapest + future_pairs;
  }

  bool prunable(Sum lb) const {
    if (!sh_.prune) return false;
    const Sum inc = sh_.best.load(std::memory_order_relaxed);
    if (inc == kNoIncumbent) return false;
    return sh_.all ? lb > inc : lb >= inc;
  }

  void leaf(Sum s) {
    atomic_lower(sh_.best, s);
    if (s < local_best) {
      local_best = s;
      local_minimizers.clear();
      local_minimizers.push_back(chosen_);
    } else if (s == local_best && sh_.all) {
      local_minimizers.push_back(chosen_);
    }
  }

  void dfs(Sum s) {
    if (sh_.stop.load(std::memory_order_relaxed)) return;
    const std::uint64_t count = sh_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (sh_.budget && count > *sh_.budget) {
      sh_.stop.store(true, std::memory_order_relaxed);
      return;
    }
    const std::uint64_t k = chosen_.size();
    if (k == sh_.M) {
      leaf(s);
      return;
    }
    if (prunable(bound(s))) return;
    const std::uint64_t r = sh_.M - k;
    const Word start = chosen_.empty() ? 0 : chosen_.back() + 1;
    const Word last = static_cast<Word>(sh_.space - r);  // leave room for r-1 more words
    for (Word w = start; w <= last; ++w) {
      const Sum add = push(w);
      dfs(s + add);
      pop();
      if (sh_.stop.load(std::memory_order_relaxed)) return;
    }
  }

  Shared& sh_;
  std::vector<Word> chosen_;
  std::vector<std::vector<Sum>> cost_;
  std::vector<Sum> scratch_;
};

SearchResult finish(const SearchConfig& cfg, Sum best, std::vector<std::vector<Word>> minimizers,
                    std::uint64_t nodes) {
  SearchResult res;
  res.beta = beta_of(best, cfg.M);
  res.nodes = nodes;
  std::sort(minimizers.begin(), minimizers.end());
  minimizers.erase(std::unique(minimizers.begin(), minimizers.end()), minimizers.end());
  if (!cfg.all_minimizers && minimizers.size() > 1) minimizers.resize(1);
  for (const auto& m : minimizers) res.minimizers.push_back(to_code(cfg.n, m));
  return res;
}

}  // namespace

SearchResult brute_force_beta(const SearchConfig& cfg) {
  validate(cfg);
  Shared sh;
  sh.n = cfg.n;
  sh.M = cfg.M;
  sh.space = Word{1} << cfg.n;
  sh.prune = cfg.lex_prune;
  sh.all = cfg.all_minimizers;
  sh.tables = sh.space <= kCostTableMaxSpace;
  sh.budget = cfg.node_budget;

  // First-level prefixes: {0, w} with fix_zero, {w} otherwise.
  std::vector<std::vector<Word>> prefixes;
  if (cfg.M == 1) {
    prefixes.push_back({0});
  } else if (cfg.fix_zero) {
    for (Word w = 1; w + (cfg.M - 2) < sh.space; ++w) prefixes.push_back({0, w});
  } else {
    for (Word w = 0; w + (cfg.M - 1) < sh.space; ++w) prefixes.push_back({w});
  }

  std::mutex merge_mu;
  Sum best = kNoIncumbent;
  std::vector<std::vector<Word>> minimizers;
  const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();

#pragma omp parallel num_threads(threads)
  {
    Worker worker(sh);
#pragma omp for schedule(dynamic, 1)
    for (std::size_t i = 0; i < prefixes.size(); ++i) {
      worker.run_from(prefixes[i]);
    }
    std::lock_guard lock(merge_mu);
    if (worker.local_best < best) {
      best = worker.local_best;
      minimizers = std::move(worker.local_minimizers);
    } else if (worker.local_best == best && worker.local_best != kNoIncumbent) {
      for (auto& m : worker.local_minimizers) minimizers.push_back(std::move(m));
    }
  }

  const std::uint64_t nodes = sh.nodes.load();
  if (sh.stop.load()) {
    std::optional<Rational> inc;
    std::optional<Code> code;
    if (best != kNoIncumbent) {
      inc = beta_of(best, cfg.M);
      std::sort(minimizers.begin(), minimizers.end());
      code = to_code(cfg.n, minimizers.front());
    }
    throw BudgetExceeded(nodes, std::move(inc), std::move(code));
  }
  return finish(cfg, best, std::move(minimizers), nodes);
}

SearchResult brute_force_beta_serial(const SearchConfig& cfg) {
  validate(cfg);
  const Word space = Word{1} << cfg.n;
  // Choose `pick` words from the pool [lo, space), prepending 0 if fixed.
  const Word lo = cfg.fix_zero ? 1 : 0;
  const std::uint64_t pick = cfg.fix_zero ? cfg.M - 1 : cfg.M;
  const std::uint64_t pool = space - lo;

  std::vector<Word> idx(pick);
  for (std::uint64_t i = 0; i < pick; ++i) idx[i] = static_cast<Word>(lo + i);
  std::vector<Word> code;
  Sum best = kNoIncumbent;
  std::vector<std::vector<Word>> minimizers;
  std::uint64_t nodes = 0;

  while (true) {
    if (cfg.node_budget && nodes >= *cfg.node_budget) {
      std::optional<Rational> inc;
      std::optional<Code> c;
      if (best != kNoIncumbent) {
        inc = beta_of(best, cfg.M);
        c = to_code(cfg.n, minimizers.front());
      }
      throw BudgetExceeded(nodes, std::move(inc), std::move(c));
    }
    ++nodes;
    code.clear();
    if (cfg.fix_zero) code.push_back(0);
    code.insert(code.end(), idx.begin(), idx.end());
    Sum s = 0;
    for (std::size_t a = 0; a < code.size(); ++a) {
      for (std::size_t b = a + 1; b < code.size(); ++b) s += static_cast<Sum>(dist(code[a], code[b]));
    }
    if (s < best) {
      best = s;
      minimizers.assign(1, code);
    } else if (s == best && cfg.all_minimizers) {
      minimizers.push_back(code);
    }
    // Next combination of `pick` out of the pool, in lexicographic order.
    std::int64_t i = static_cast<std::int64_t>(pick) - 1;
    while (i >= 0 && idx[i] == lo + pool - pick + static_cast<std::uint64_t>(i)) --i;
    if (i < 0) break;
    ++idx[i];
    for (std::uint64_t j = static_cast<std::uint64_t>(i) + 1; j < pick; ++j) idx[j] = idx[j - 1] + 1;
  }
  return finish(cfg, best, std::move(minimizers), nodes);
}

Code construct_two_n(int n) {
  if (n < 2) throw DomainError("construct_two_n needs n >= 2, got n=" + std::to_string(n));
  std::vector<std::string> words;
  const std::string zero(static_cast<std::size_t>(n), '0');
  words.push_back(zero);
  for (int i = 0; i < n; ++i) {
    std::string w = zero;
    w[i] = '1';
    words.push_back(w);
  }
  for (int j = 1; j < n; ++j) {
    std::string w = zero;
    w[0] = '1';
    w[j] = '1';
    words.push_back(w);
  }
  return Code(words);
}

Rational two_n_average_distance(int n) {
  if (n < 2) throw DomainError("two_n_average_distance needs n >= 2");
  return Rational(5, 2) - make_rational(4L * n - 2, static_cast<long>(n) * n);
}

Code construct_constant_weight(int n, int w, std::uint64_t max_words) {
  if (n < 1 || w < 0 || w > n) {
    throw DomainError("construct_constant_weight needs 0 <= w <= n, got n=" + std::to_string(n) +
                      " w=" + std::to_string(w));
  }
  const Integer count = binomial(n, w);
  if (count > Integer(static_cast<unsigned long>(max_words))) {
    throw DomainError("constant-weight code has " + count.get_str() + " words, over the budget of " +
                      std::to_string(max_words));
  }
  const std::size_t total = count.get_ui();
  std::vector<std::string> words;
  words.reserve(total);
  std::vector<int> pos(static_cast<std::size_t>(w));
  for (int i = 0; i < w; ++i) pos[i] = i;
  // Lexicographic w-subsets of {0..n-1}; works for any n.
  while (true) {
    std::string word(static_cast<std::size_t>(n), '0');
    for (int p : pos) word[p] = '1';
    words.push_back(std::move(word));
    int i = w - 1;
    while (i >= 0 && pos[i] == n - w + i) --i;
    if (i < 0) break;
    ++pos[i];
    for (int j = i + 1; j < w; ++j) pos[j] = pos[j - 1] + 1;
  }
  return Code(words);
}

}  // namespace avgdist
