#include <gtest/gtest.h>

#include <random>

#include "bcrate/families.hpp"
#include "bcrate/hierarchy.hpp"

using namespace bcrate;

namespace {

Rational r(long p, long q = 1) { return make_rational(p, q); }

int brute_alpha(const Graph& g) {
  int best = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << g.vertex_count()); ++s) {
    bool ok = true;
    for (int v : MessageSet(s).elements()) ok = ok && !g.neighbors(v).intersects(MessageSet(s));
    if (ok) best = std::max(best, std::popcount(s));
  }
  return best;
}

}  // namespace

TEST(Hierarchy, C5RowCounts) {
  const HierarchyLp lp = build_hierarchy_lp(from_graph(cycle(5)), 2);
  EXPECT_EQ(lp.problem.num_vars(), 32);
  EXPECT_EQ(lp.counts.submodularity.at(2), 80);
  EXPECT_EQ(lp.counts.slope, 5 * 16);
  EXPECT_EQ(lp.counts.monotonicity, 5 * 16);
  const HierarchyLp b1 = build_hierarchy_lp(from_graph(cycle(5)), 1);
  EXPECT_TRUE(b1.counts.submodularity.empty());
}

TEST(Hierarchy, C5SymmetryOrbits) {
  HierarchyOptions opts;
  opts.symmetry = SymmetryGroup::cyclic(5);
  const HierarchyLp lp = build_hierarchy_lp(from_graph(cycle(5)), 2, opts);
  EXPECT_EQ(lp.problem.num_vars(), 8);
}

TEST(Hierarchy, C5Values) {
  const Instance c5 = from_graph(cycle(5));
  EXPECT_EQ(solve_bk(c5, 2).value, r(5, 2));
  EXPECT_EQ(solve_bk(c5, 1).value, r(2));
  HierarchyOptions opts;
  opts.symmetry = SymmetryGroup::cyclic(5);
  EXPECT_EQ(solve_bk(c5, 2, opts).value, r(5, 2));
}

TEST(Hierarchy, Tri3Values) {
  EXPECT_EQ(solve_bk(tri3(), 2).value, r(2));
  EXPECT_EQ(solve_bk(tri3(), 3).value, r(3));
}

TEST(Hierarchy, SolutionsAreMembers) {
  const Instance c5 = from_graph(cycle(5));
  for (int k = 1; k <= 5; ++k) {
    const auto b = solve_bk(c5, k);
    EXPECT_TRUE(verify_hierarchy_membership(b.solution, c5, k)) << k;
  }
}

TEST(Hierarchy, RejectsBadInput) {
  const Instance c5 = from_graph(cycle(5));
  EXPECT_THROW(build_hierarchy_lp(c5, 0), std::invalid_argument);
  EXPECT_THROW(build_hierarchy_lp(c5, 6), std::invalid_argument);
  HierarchyOptions bad;
  bad.symmetry = SymmetryGroup(5, {{1, 0, 2, 3, 4}});
  EXPECT_THROW(build_hierarchy_lp(c5, 2, bad), std::invalid_argument);
  HierarchyOptions tight;
  tight.max_n_low = 4;
  EXPECT_THROW(build_hierarchy_lp(c5, 2, tight), ResourceCapError);
}

TEST(Hierarchy, AlphaFeasibleVector) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = random_graph(6, 0.4, rng);
    const EntropyVector x = alpha_feasible_vector(g);
    EXPECT_TRUE(verify_hierarchy_membership(x, from_graph(g), 1));
    EXPECT_EQ(x[MessageSet()], Rational(brute_alpha(g)));
  }
}

TEST(Hierarchy, MembershipRejectsNegativeEmptySet) {
  EntropyVector x = alpha_feasible_vector(cycle(5));
  x[MessageSet()] = -1;
  EXPECT_FALSE(verify_hierarchy_membership(x, from_graph(cycle(5)), 1));
}

TEST(Coverage, ZeroWeights) {
  EntropyVector x(4);
  for (std::uint64_t s = 0; s < 16; ++s) x[MessageSet(s)] = std::popcount(s);
  const auto res = decompose_coverage(x);
  ASSERT_TRUE(res.ok);
  for (const auto& w : res.weights) EXPECT_EQ(w, Rational(0));
}

TEST(Coverage, RoundTrip) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> num(0, 6);
  for (int trial = 0; trial < 50; ++trial) {
    WeightVector w(16, Rational(0));
    for (std::size_t t = 1; t < 16; ++t) w[t] = make_rational(num(rng), 1 + num(rng));
    const EntropyVector x = coverage_vector(4, w);
    const auto res = decompose_coverage(x);
    ASSERT_TRUE(res.ok);
    EXPECT_EQ(res.weights, w);
    EXPECT_TRUE(satisfies_slope_and_submodularity(x));
  }
}

TEST(Coverage, ShiftIsReported) {
  EntropyVector x(2);
  for (std::uint64_t s = 0; s < 4; ++s) x[MessageSet(s)] = std::popcount(s) + 1;
  const auto res = decompose_coverage(x);
  EXPECT_FALSE(res.ok);
  EXPECT_NE(res.witness.find("initialize"), std::string::npos);
}
