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

#include <optional>

#include "avgdist/lp.hpp"

namespace avgdist {

void LinearProgram::validate() const {
  const std::size_t nv = objective.size();
  if (!lower.empty() && lower.size() != nv) {
    throw DomainError("lower bounds: expected " + std::to_string(nv) + " entries");
  }
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (constraints[i].coeffs.size() != nv) {
      throw DomainError("constraint " + std::to_string(i) + ": expected " + std::to_string(nv) +
                        " coefficients");
    }
  }
}

std::string_view status_name(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

namespace {

// Equality-form tableau over columns [structural | slack | artificial | rhs].
// Every row starts with its own artificial basic, so the artificial block
// always holds B^-1 and the duals can be read off the objective row.
class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp) {
    const std::size_t m = lp.constraints.size();
    nv_ = lp.num_vars();
    rows_ = m;
    sign_.assign(m, 1);
    slack_col_.assign(m, std::nullopt);
    std::size_t ns = 0;
    for (const auto& c : lp.constraints) {
      if (c.relation != Relation::Equal) ++ns;
    }
    art0_ = nv_ + ns;
    cols_ = art0_ + m;
    t_.assign(m, std::vector<Rational>(cols_ + 1));
    basis_.resize(m);

    std::size_t slack = nv_;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& c = lp.constraints[i];
      // shift x = lower + z
      Rational rhs = c.rhs;
      for (std::size_t j = 0; j < nv_; ++j) {
        t_[i][j] = c.coeffs[j];
        if (!lp.lower.empty() && sgn(lp.lower[j]) != 0) rhs -= c.coeffs[j] * lp.lower[j];
      }
      if (c.relation == Relation::LessEqual) {
        t_[i][slack] = 1;
        slack_col_[i] = slack++;
      } else if (c.relation == Relation::GreaterEqual) {
        t_[i][slack] = -1;
        slack_col_[i] = slack++;
      }
      t_[i][cols_] = rhs;
      if (sgn(rhs) < 0) {
        sign_[i] = -1;
        for (auto& v : t_[i]) v = -v;
      }
      t_[i][art0_ + i] = 1;
      basis_[i] = art0_ + i;
    }
    obj_.assign(cols_ + 1, Rational(0));
  }

  // Sets the objective row for column costs `cost` (size cols_).
  void price(const std::vector<Rational>& cost) {
    cost_ = cost;
    for (std::size_t j = 0; j <= cols_; ++j) obj_[j] = j < cols_ ? cost[j] : Rational(0);
    for (std::size_t i = 0; i < rows_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (sgn(t_[i][j]) != 0) obj_[j] -= cb * t_[i][j];
      }
    }
    // obj_[cols_] now holds -(current objective value)
  }

  enum class Step { Optimal, Unbounded, Pivoted };

  // One Bland iteration over columns [0, limit).
  Step iterate(std::size_t limit, std::size_t& entering) {
    std::optional<std::size_t> enter;
    for (std::size_t j = 0; j < limit; ++j) {
      if (sgn(obj_[j]) > 0) {
        enter = j;
        break;
      }
    }
    if (!enter) return Step::Optimal;
    entering = *enter;
    std::optional<std::size_t> leave;
    Rational best;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (sgn(t_[i][entering]) <= 0) continue;
      Rational ratio = t_[i][cols_] / t_[i][entering];
      if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
        leave = i;
        best = std::move(ratio);
      }
    }
    if (!leave) return Step::Unbounded;
    pivot(*leave, entering);
    return Step::Pivoted;
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / t_[r][c];
    for (auto& v : t_[r]) {
      if (sgn(v) != 0) v *= inv;
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (sgn(row[c]) == 0) return;
      const Rational f = row[c];
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (sgn(t_[r][j]) != 0) row[j] -= f * t_[r][j];
      }
    };
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i != r) eliminate(t_[i]);
    }
    eliminate(obj_);
    basis_[r] = c;
    ++pivots_;
  }

  // Pivot basic artificials (at level zero) out wherever the row allows.
  void expel_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < art0_) continue;
      for (std::size_t j = 0; j < art0_; ++j) {
        if (sgn(t_[i][j]) != 0) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  // Multipliers for the original rows: y' = c_B B^-1 read from the
  // artificial block, then undo the row negation.
  std::vector<Rational> duals() const {
    std::vector<Rational> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      y[i] = cost_[art0_ + i] - obj_[art0_ + i];
      if (sign_[i] < 0) y[i] = -y[i];
    }
    return y;
  }

  // Basic solution restricted to structural variables (the shifted z).
  std::vector<Rational> structural() const {
    std::vector<Rational> z(nv_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < nv_) z[basis_[i]] = t_[i][cols_];
    }
    return z;
  }

  // Direction of unboundedness for `entering`, structural part.
  std::vector<Rational> ray(std::size_t entering) const {
    std::vector<Rational> d(nv_);
    if (entering < nv_) d[entering] = 1;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < nv_) d[basis_[i]] = -t_[i][entering];
    }
    return d;
  }

  Rational objective_value() const { return -obj_[cols_]; }
  std::size_t art0() const { return art0_; }
  std::size_t cols() const { return cols_; }
  std::size_t pivots() const { return pivots_; }

 private:
  std::size_t nv_ = 0, rows_ = 0, art0_ = 0, cols_ = 0, pivots_ = 0;
  std::vector<int> sign_;
  std::vector<std::optional<std::size_t>> slack_col_;
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> obj_;
  std::vector<Rational> cost_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpSolution solve(const LinearProgram& lp) {
  lp.validate();
  const std::size_t nv = lp.num_vars();
  Tableau tab(lp);
  LpSolution sol;

  // Phase 1: maximize -sum(artificials).
  std::vector<Rational> cost(tab.cols(), Rational(0));
  for (std::size_t j = tab.art0(); j < tab.cols(); ++j) cost[j] = -1;
  tab.price(cost);
  std::size_t entering = 0;
  while (tab.iterate(tab.cols(), entering) == Tableau::Step::Pivoted) {
  }
  if (sgn(tab.objective_value()) < 0) {
    sol.status = LpStatus::Infeasible;
    sol.dual = tab.duals();
    sol.pivots = tab.pivots();
    return sol;
  }
  tab.expel_artificials();

  // Phase 2 on structural and slack columns only.
  std::fill(cost.begin(), cost.end(), Rational(0));
  for (std::size_t j = 0; j < nv; ++j) cost[j] = lp.objective[j];
  tab.price(cost);
  Tableau::Step step;
  while ((step = tab.iterate(tab.art0(), entering)) == Tableau::Step::Pivoted) {
  }

  auto z = tab.structural();
  sol.point.resize(nv);
  for (std::size_t j = 0; j < nv; ++j) sol.point[j] = lp.lower_bound(j) + z[j];
  sol.value = 0;
  for (std::size_t j = 0; j < nv; ++j) sol.value += lp.objective[j] * sol.point[j];
  sol.pivots = tab.pivots();
  if (step == Tableau::Step::Unbounded) {
    sol.status = LpStatus::Unbounded;
    sol.ray = tab.ray(entering);
    return sol;
  }
  sol.status = LpStatus::Optimal;
  sol.dual = tab.duals();
  return sol;
}

namespace {

Rational row_dot(const Constraint& c, const std::vector<Rational>& x) {
  Rational s = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (sgn(c.coeffs[j]) != 0) s += c.coeffs[j] * x[j];
  }
  return s;
}

bool dual_sign_ok(Relation rel, const Rational& y) {
  switch (rel) {
    case Relation::LessEqual: return sgn(y) >= 0;
    case Relation::GreaterEqual: return sgn(y) <= 0;
    case Relation::Equal: return true;
  }
  return false;
}

bool satisfies(Relation rel, const Rational& lhs, const Rational& rhs) {
  switch (rel) {
    case Relation::LessEqual: return lhs <= rhs;
    case Relation::GreaterEqual: return lhs >= rhs;
    case Relation::Equal: return lhs == rhs;
  }
  return false;
}

void check_primal(const LinearProgram& lp, const std::vector<Rational>& x,
                  std::vector<std::string>& out) {
  if (x.size() != lp.num_vars()) {
    out.push_back("point has wrong dimension");
    return;
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < lp.lower_bound(j)) out.push_back("x_" + std::to_string(j) + " below its lower bound");
  }
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const auto& c = lp.constraints[i];
    if (!satisfies(c.relation, row_dot(c, x), c.rhs)) {
      out.push_back("constraint " + std::to_string(i) + " violated");
    }
  }
}

}  // namespace

std::vector<std::string> check_solution(const LinearProgram& lp, const LpSolution& sol) {
  lp.validate();
  std::vector<std::string> out;
  const std::size_t nv = lp.num_vars();
  const std::size_t m = lp.constraints.size();

  auto reduced_costs = [&](const std::vector<Rational>& y) {
    std::vector<Rational> r(lp.objective);
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(y[i]) == 0) continue;
      for (std::size_t j = 0; j < nv; ++j) r[j] -= y[i] * lp.constraints[i].coeffs[j];
    }
    return r;
  };

  switch (sol.status) {
    case LpStatus::Optimal: {
      check_primal(lp, sol.point, out);
      if (sol.dual.size() != m) {
        out.push_back("dual has wrong dimension");
        return out;
      }
      for (std::size_t i = 0; i < m; ++i) {
        if (!dual_sign_ok(lp.constraints[i].relation, sol.dual[i])) {
          out.push_back("dual " + std::to_string(i) + " has the wrong sign");
        }
      }
      const auto r = reduced_costs(sol.dual);
      for (std::size_t j = 0; j < nv; ++j) {
        if (sgn(r[j]) > 0) out.push_back("reduced cost " + std::to_string(j) + " is positive");
      }
      if (!out.empty()) return out;
      Rational primal = 0, dual = 0;
      for (std::size_t j = 0; j < nv; ++j) {
        primal += lp.objective[j] * sol.point[j];
        dual += r[j] * lp.lower_bound(j);
      }
      for (std::size_t i = 0; i < m; ++i) dual += sol.dual[i] * lp.constraints[i].rhs;
      if (primal != sol.value) out.push_back("reported value differs from objective at point");
      if (primal != dual) out.push_back("primal and dual objectives differ");
      for (std::size_t i = 0; i < m; ++i) {
        const auto& c = lp.constraints[i];
        if (sgn(sol.dual[i]) != 0 && row_dot(c, sol.point) != c.rhs) {
          out.push_back("complementary slackness fails on constraint " + std::to_string(i));
        }
      }
      for (std::size_t j = 0; j < nv; ++j) {
        if (sgn(r[j]) != 0 && sol.point[j] != lp.lower_bound(j)) {
          out.push_back("complementary slackness fails on variable " + std::to_string(j));
        }
      }
      break;
    }
    case LpStatus::Infeasible: {
      if (sol.dual.size() != m) {
        out.push_back("Farkas ray has wrong dimension");
        return out;
      }
      for (std::size_t i = 0; i < m; ++i) {
        if (!dual_sign_ok(lp.constraints[i].relation, sol.dual[i])) {
          out.push_back("Farkas multiplier " + std::to_string(i) + " has the wrong sign");
        }
      }
      // A^T y >= 0 and y . (b - A l) < 0 leave no z >= 0 with A(l + z) ~ b.
      std::vector<Rational> aty(nv);
      Rational rhs = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const auto& c = lp.constraints[i];
        Rational shifted = c.rhs;
        for (std::size_t j = 0; j < nv; ++j) {
          aty[j] += sol.dual[i] * c.coeffs[j];
          shifted -= c.coeffs[j] * lp.lower_bound(j);
        }
        rhs += sol.dual[i] * shifted;
      }
      for (std::size_t j = 0; j < nv; ++j) {
        if (sgn(aty[j]) < 0) out.push_back("Farkas: (A^T y)_" + std::to_string(j) + " < 0");
      }
      if (sgn(rhs) >= 0) out.push_back("Farkas: y . b is not negative");
      break;
    }
    case LpStatus::Unbounded: {
      check_primal(lp, sol.point, out);
      if (sol.ray.size() != nv) {
        out.push_back("ray has wrong dimension");
        return out;
      }
      Rational gain = 0;
      for (std::size_t j = 0; j < nv; ++j) {
        if (sgn(sol.ray[j]) < 0) out.push_back("ray leaves the lower bound of x_" + std::to_string(j));
        gain += lp.objective[j] * sol.ray[j];
      }
      for (std::size_t i = 0; i < m; ++i) {
        const auto& c = lp.constraints[i];
        if (!satisfies(c.relation, row_dot(c, sol.ray), Rational(0))) {
          out.push_back("ray violates constraint " + std::to_string(i));
        }
      }
      if (sgn(gain) <= 0) out.push_back("ray does not improve the objective");
      break;
    }
  }
  return out;
}

}  // namespace avgdist
