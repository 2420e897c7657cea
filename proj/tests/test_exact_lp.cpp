#include <gtest/gtest.h>

#include <functional>
#include <optional>
#include <random>

#include "bcrate/exact_lp.hpp"

using namespace bcrate;

namespace {

Rational r(long p, long q = 1) { return make_rational(p, q); }

// Solves a square rational system by Gauss-Jordan; nullopt if singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(a[piv][col]) == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || sgn(a[i][col]) == 0) continue;
      const Rational f = a[i][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[i][k] -= f * a[col][k];
      b[i] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// Brute-force optimum over all vertices of a bounded polyhedron {x >= 0, rows}.
std::optional<Rational> vertex_oracle(const LpProblem& p) {
  const int n = p.num_vars();
  std::vector<std::vector<Rational>> dense;
  std::vector<Rational> rhs;
  for (const auto& row : p.rows()) {
    std::vector<Rational> d(static_cast<std::size_t>(n), Rational(0));
    for (const auto& t : row.terms) d[static_cast<std::size_t>(t.var)] = t.coef;
    dense.push_back(d);
    rhs.push_back(row.rhs);
  }
  for (int v = 0; v < n; ++v) {
    std::vector<Rational> d(static_cast<std::size_t>(n), Rational(0));
    d[static_cast<std::size_t>(v)] = 1;
    dense.push_back(d);
    rhs.push_back(*p.lower_bound(v));
  }
  const int m = static_cast<int>(dense.size());
  std::optional<Rational> best;
  std::vector<int> pick(static_cast<std::size_t>(n));
  // Enumerate n-subsets of constraints.
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      std::vector<std::vector<Rational>> a;
      std::vector<Rational> b;
      for (int i : pick) {
        a.push_back(dense[static_cast<std::size_t>(i)]);
        b.push_back(rhs[static_cast<std::size_t>(i)]);
      }
      auto x = solve_square(a, b);
      if (!x) return;
      if (!check_feasible(p, *x).empty()) return;
      const Rational v = evaluate_objective(p, *x);
      if (!best || v < *best) best = v;
      return;
    }
    for (int i = start; i < m; ++i) {
      pick[static_cast<std::size_t>(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

LpProblem random_bounded_lp(std::mt19937_64& rng, int vars, int rows, bool degenerate) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> rel(0, 2);
  LpProblem p(vars, Rational(0));
  std::vector<Term> obj;
  for (int v = 0; v < vars; ++v) obj.push_back({v, Rational(coef(rng))});
  p.set_objective(obj);
  for (int i = 0; i < rows; ++i) {
    std::vector<Term> terms;
    for (int v = 0; v < vars; ++v) terms.push_back({v, Rational(coef(rng))});
    const int kind = rel(rng);
    const Rational rhs = degenerate ? Rational(0) : Rational(coef(rng));
    p.add_row(terms, kind == 0 ? Relation::kGreaterEqual : kind == 1 ? Relation::kLessEqual : Relation::kEqual, rhs);
  }
  for (int v = 0; v < vars; ++v) p.add_row({{v, Rational(1)}}, Relation::kLessEqual, Rational(4));
  return p;
}

}  // namespace

TEST(ExactLp, SingleBound) {
  LpProblem p(1);
  p.set_objective({{0, r(1)}});
  p.add_row({{0, r(1)}}, Relation::kGreaterEqual, r(5, 2));
  const auto opt = solve_min(p);
  ASSERT_EQ(opt.status, LpStatus::kOptimal);
  EXPECT_EQ(opt.value, r(5, 2));
  EXPECT_TRUE(opt.dual_certified);
}

TEST(ExactLp, BindingAggregate) {
  LpProblem p(2);
  p.set_objective({{0, r(1)}, {1, r(1)}});
  p.add_row({{0, r(1)}}, Relation::kGreaterEqual, r(1));
  p.add_row({{1, r(1)}}, Relation::kGreaterEqual, r(1));
  p.add_row({{0, r(1)}, {1, r(1)}}, Relation::kGreaterEqual, r(3));
  const auto opt = solve_min(p);
  ASSERT_EQ(opt.status, LpStatus::kOptimal);
  EXPECT_EQ(opt.value, r(3));
  EXPECT_TRUE(check_feasible(p, opt.assignment).empty());
}

TEST(ExactLp, InfeasibleAndUnbounded) {
  LpProblem inf(1, Rational(0));
  inf.set_objective({{0, r(1)}});
  inf.add_row({{0, r(1)}}, Relation::kLessEqual, r(-1));
  EXPECT_EQ(solve_min(inf).status, LpStatus::kInfeasible);

  LpProblem unb(2, Rational(0));
  unb.set_objective({{0, r(-1)}});
  unb.add_row({{0, r(1)}, {1, r(-1)}}, Relation::kLessEqual, r(2));
  EXPECT_EQ(solve_min(unb).status, LpStatus::kUnbounded);

  LpProblem free_unb(1);
  free_unb.set_objective({{0, r(1)}});
  EXPECT_EQ(solve_min(free_unb).status, LpStatus::kUnbounded);

  // More rows than columns takes the dual route.
  LpProblem tall(1, Rational(0));
  tall.set_objective({{0, r(1)}});
  tall.add_row({{0, r(1)}}, Relation::kGreaterEqual, r(2));
  tall.add_row({{0, r(1)}}, Relation::kLessEqual, r(1));
  tall.add_row({{0, r(2)}}, Relation::kLessEqual, r(7));
  const auto t = solve_min(tall);
  EXPECT_EQ(t.status, LpStatus::kInfeasible);
}

TEST(ExactLp, FreeVariablesAndEqualities) {
  LpProblem p(2);
  p.set_objective({{0, r(1)}, {1, r(-1)}});
  p.add_row({{0, r(1)}, {1, r(1)}}, Relation::kEqual, r(1));
  p.add_row({{0, r(1)}, {1, r(-1)}}, Relation::kGreaterEqual, r(-3, 2));
  const auto opt = solve_min(p);
  ASSERT_EQ(opt.status, LpStatus::kOptimal);
  EXPECT_EQ(opt.value, r(-3, 2));
  EXPECT_TRUE(opt.dual_certified);
}

TEST(ExactLp, ShiftedLowerBounds) {
  LpProblem p(2);
  p.set_lower_bound(0, r(-2));
  p.set_lower_bound(1, r(1, 3));
  p.set_objective({{0, r(2)}, {1, r(1)}});
  p.add_row({{0, r(1)}, {1, r(1)}}, Relation::kGreaterEqual, r(0));
  const auto opt = solve_min(p);
  ASSERT_EQ(opt.status, LpStatus::kOptimal);
  EXPECT_EQ(opt.value, r(-2));
  EXPECT_EQ(opt.assignment[0], r(-2));
  EXPECT_EQ(opt.assignment[1], r(2));
}

TEST(ExactLp, CheckFeasibleReportsViolations) {
  LpProblem p(2, Rational(0));
  p.add_row({{0, r(1)}, {1, r(1)}}, Relation::kGreaterEqual, r(2));
  p.add_row({{0, r(1)}}, Relation::kEqual, r(1));
  const std::vector<Rational> good{r(1), r(1)};
  EXPECT_TRUE(check_feasible(p, good).empty());
  const std::vector<Rational> bad{r(1), r(-1, 2)};
  const auto v = check_feasible(p, bad);
  ASSERT_EQ(v.size(), 2U);
  EXPECT_EQ(v[0].kind, LpViolation::Kind::kRow);
  EXPECT_EQ(v[1].kind, LpViolation::Kind::kLowerBound);
}

TEST(ExactLp, NormalizeTerms) {
  const auto t = normalize_terms({{2, r(1)}, {0, r(3)}, {2, r(-1)}, {0, r(1, 2)}});
  ASSERT_EQ(t.size(), 1U);
  EXPECT_EQ(t[0].var, 0);
  EXPECT_EQ(t[0].coef, r(7, 2));
}

TEST(ExactLp, DumpFormat) {
  LpProblem p(2, Rational(0));
  p.set_objective({{0, r(1)}});
  p.add_row({{0, r(1)}, {1, r(-2)}}, Relation::kGreaterEqual, r(1, 2));
  const std::string text = p.dump();
  EXPECT_NE(text.find("min x0"), std::string::npos);
  EXPECT_NE(text.find("r0: x0 - 2 x1 >= 1/2"), std::string::npos);
}

TEST(ExactLp, RandomAgainstVertexEnumeration) {
  std::mt19937_64 rng(2024);
  int optimal = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int vars = 2 + trial % 3;
    const int rows = 1 + trial % 5;
    const LpProblem p = random_bounded_lp(rng, vars, rows, false);
    const auto opt = solve_min(p);
    const auto oracle = vertex_oracle(p);
    if (!oracle) {
      EXPECT_EQ(opt.status, LpStatus::kInfeasible) << p.dump();
      continue;
    }
    ASSERT_EQ(opt.status, LpStatus::kOptimal) << p.dump();
    EXPECT_EQ(opt.value, *oracle) << p.dump();
    EXPECT_TRUE(opt.dual_certified);
    ++optimal;
  }
  EXPECT_GT(optimal, 100);
}

TEST(ExactLp, DegenerateTerminationAndDeterminism) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const LpProblem p = random_bounded_lp(rng, 3 + trial % 2, 4 + trial % 5, true);
    for (bool bland : {false, true}) {
      SolveOptions opts;
      opts.bland_only = bland;
      opts.degenerate_switch = 2;
      const auto a = solve_min(p, opts);
      const auto b = solve_min(p, opts);
      ASSERT_EQ(a.status, b.status);
      EXPECT_EQ(a.assignment, b.assignment);
      if (a.status == LpStatus::kOptimal) {
        // The origin is feasible for homogeneous rows, so the value is at most 0.
        EXPECT_LE(a.value, Rational(0));
        const auto oracle = vertex_oracle(p);
        ASSERT_TRUE(oracle.has_value());
        EXPECT_EQ(a.value, *oracle);
      }
    }
  }
}

TEST(ExactLp, DualRouteMatchesPrimalRoute) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    // Many rows over few columns forces the dual route; compare with the vertex oracle.
    const LpProblem p = random_bounded_lp(rng, 2, 6, false);
    const auto opt = solve_min(p);
    const auto oracle = vertex_oracle(p);
    if (!oracle) {
      EXPECT_EQ(opt.status, LpStatus::kInfeasible);
    } else {
      ASSERT_EQ(opt.status, LpStatus::kOptimal);
      EXPECT_EQ(opt.value, *oracle);
      EXPECT_NE(opt.route, "primal");
    }
  }
}

TEST(ExactLp, WarmStartNeverChangesTheValue) {
  std::mt19937_64 rng(77);
  int warm = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const LpProblem p = random_bounded_lp(rng, 4 + trial % 6, 6 + trial % 9, trial % 3 == 0);
    SolveOptions cold;
    cold.float_warm_start = false;
    const auto a = solve_min(p);
    const auto b = solve_min(p, cold);
    ASSERT_EQ(a.status, b.status);
    EXPECT_FALSE(b.warm_started);
    if (a.status == LpStatus::kOptimal) {
      EXPECT_EQ(a.value, b.value);
      EXPECT_TRUE(a.dual_certified);
      warm += a.warm_started ? 1 : 0;
    }
  }
  EXPECT_GT(warm, 0);
}
