#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "bcrate/combinatorics.hpp"
#include "bcrate/families.hpp"

using namespace bcrate;

namespace {

Rational r(long p, long q = 1) { return make_rational(p, q); }

// Longest expanding sequence by trying every ordered selection of receivers.
Rational brute_alpha(const Instance& inst) {
  const int m = inst.receiver_count();
  Rational best = 0;
  std::vector<int> seq;
  std::function<void(MessageSet)> rec = [&](MessageSet covered) {
    best = std::max(best, sequence_weight(inst, seq));
    for (int j = 0; j < m; ++j) {
      if (covered.contains(inst.receiver(j).wants)) continue;
      seq.push_back(j);
      rec(covered | inst.side(j));
      seq.pop_back();
    }
  };
  rec(MessageSet{});
  return best;
}

int brute_independence(const Graph& g) {
  int best = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << g.vertex_count()); ++s) {
    const MessageSet set(s);
    bool ok = true;
    for (int v : set.elements()) ok = ok && !g.neighbors(v).intersects(set);
    if (ok) best = std::max(best, set.size());
  }
  return best;
}

Graph empty_graph(int n) { return Graph(n); }

Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

}  // namespace

TEST(Expanding, Examples) {
  const Instance c5 = from_graph(cycle(5));
  EXPECT_TRUE(is_expanding_sequence(c5, std::vector<int>{0, 2}));
  EXPECT_TRUE(is_expanding_sequence(c5, std::vector<int>{3}));
  EXPECT_FALSE(is_expanding_sequence(c5, std::vector<int>{0, 1}));
}

TEST(Alpha, NamedGraphs) {
  EXPECT_EQ(alpha_exact(from_graph(petersen())).weight, 4);
  EXPECT_EQ(alpha_exact(from_graph(groetzsch())).weight, 5);
  EXPECT_EQ(alpha_exact(from_graph(chvatal())).weight, 4);
  EXPECT_EQ(alpha_exact(from_graph(projective_hadamard(3).graph)).weight, 3);
  EXPECT_EQ(alpha_exact(from_graph(cycle(5))).weight, 2);
}

TEST(Alpha, WitnessIsExpanding) {
  for (const Graph& g : {petersen(), groetzsch(), cycle(7)}) {
    const Instance inst = from_graph(g);
    const auto a = alpha_exact(inst);
    EXPECT_TRUE(is_expanding_sequence(inst, a.receivers));
    EXPECT_EQ(a.weight, sequence_weight(inst, a.receivers));
  }
}

TEST(Alpha, MatchesIndependenceNumberOnRandomGraphs) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_graph(3 + trial % 8, 0.4, rng);
    EXPECT_EQ(alpha_exact(from_graph(g)).weight, brute_independence(g));
  }
}

TEST(Alpha, MatchesBruteForceOnRandomHypergraphs) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    Instance inst = random_instance(2 + trial % 4, 2 + trial % 5, 0.4, rng);
    if (trial % 3 == 0) {
      std::vector<Rational> rates;
      for (int i = 0; i < inst.message_count(); ++i) rates.push_back(r(1 + static_cast<long>(rng() % 4), 4));
      inst = Instance(inst.message_count(), inst.receivers(), rates);
    }
    const auto a = alpha_exact(inst);
    EXPECT_EQ(a.weight, brute_alpha(inst));
    EXPECT_TRUE(is_expanding_sequence(inst, a.receivers));
    const auto g = alpha_greedy(inst);
    EXPECT_TRUE(is_expanding_sequence(inst, g.receivers));
    EXPECT_LE(g.weight, a.weight);
  }
}

TEST(Alpha, StateCap) { EXPECT_THROW(alpha_exact(from_graph(cycle(20)), 5), ResourceCapError); }

TEST(Hyperclique, Predicates) {
  const Instance t = tri3();
  EXPECT_FALSE(is_strong_hyperclique(t, MessageSet{0, 1}));
  for (int v = 0; v < 3; ++v) EXPECT_TRUE(is_strong_hyperclique(t, MessageSet{v}));
  const Instance k4 = from_graph(complete_graph(4));
  EXPECT_TRUE(is_weak_hyperclique(k4, std::vector<int>{0, 1, 2, 3}));
  EXPECT_FALSE(is_weak_hyperclique(from_graph(cycle(5)), std::vector<int>{0, 2}));
}

TEST(Hyperclique, Enumeration) {
  using V = std::vector<std::vector<int>>;
  EXPECT_EQ(enumerate_maximal_hypercliques(tri3(), CoverKind::kStrong), (V{{0}, {1}, {2}}));
  EXPECT_EQ(enumerate_maximal_hypercliques(from_graph(cycle(5)), CoverKind::kStrong),
            (V{{0, 1}, {0, 4}, {1, 2}, {2, 3}, {3, 4}}));
  EXPECT_EQ(enumerate_maximal_hypercliques(from_graph(complete_graph(3)), CoverKind::kStrong), (V{{0, 1, 2}}));
  EXPECT_EQ(enumerate_maximal_hypercliques(tri3(), CoverKind::kWeak), (V{{0}, {1}, {2}}));
}

TEST(Hyperclique, EnumerationMatchesBruteForce) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = random_instance(3 + trial % 4, 3 + trial % 4, 0.5, rng);
    const int n = inst.message_count();
    std::vector<std::vector<int>> expected;
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
      if (!is_strong_hyperclique(inst, MessageSet(s))) continue;
      bool maximal = true;
      for (int v = 0; v < n && maximal; ++v) {
        if (!((s >> v) & 1U) && is_strong_hyperclique(inst, MessageSet(s | (std::uint64_t{1} << v)))) maximal = false;
      }
      if (maximal) expected.push_back(MessageSet(s).elements());
    }
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(enumerate_maximal_hypercliques(inst, CoverKind::kStrong), expected);
  }
}

TEST(Cover, KnownValues) {
  EXPECT_EQ(fractional_cover(from_graph(cycle(5)), CoverKind::kStrong).total, r(5, 2));
  EXPECT_EQ(fractional_cover(from_graph(kneser_complement(5, 2)), CoverKind::kStrong).total, r(5, 2));
  EXPECT_EQ(fractional_cover(from_graph(complement(cycle(7))), CoverKind::kStrong).total, r(7, 3));
  EXPECT_EQ(fractional_cover(from_graph(petersen()), CoverKind::kStrong).total, 5);
  EXPECT_EQ(fractional_cover(tri3(), CoverKind::kStrong).total, 3);
  // No two tri3 receivers form a weak hyperclique.
  EXPECT_EQ(fractional_cover(tri3(), CoverKind::kWeak).total, 3);
}

TEST(Cover, StrongAtLeastWeakAndWitnessValid) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = random_instance(2 + trial % 5, 2 + trial % 6, 0.5, rng);
    const auto strong = fractional_cover(inst, CoverKind::kStrong);
    const auto weak = fractional_cover(inst, CoverKind::kWeak);
    EXPECT_TRUE(check_cover(inst, strong).empty());
    EXPECT_TRUE(check_cover(inst, weak).empty());
    EXPECT_GE(strong.total, weak.total);
    EXPECT_GE(weak.total, alpha_exact(inst).weight);
  }
}

TEST(Cover, CheckReportsProblems) {
  const Instance c5 = from_graph(cycle(5));
  FractionalCover bad{CoverKind::kStrong, {{{0, 2}, 1}}, 1};
  const auto problems = check_cover(c5, bad);
  EXPECT_FALSE(problems.empty());
}

TEST(Cover, VertexTransitiveIsNOverOmega) {
  for (auto [n, k] : {std::pair{7, 1}, {7, 2}, {9, 2}, {10, 3}, {11, 2}}) {
    const Graph g = circulant(n, k);
    EXPECT_EQ(fractional_cover(from_graph(g), CoverKind::kStrong).total, r(n, clique_number(g))) << n << "," << k;
  }
  for (auto [n, k] : {std::pair{5, 2}, {6, 2}, {7, 3}}) {
    const Graph g = kneser_complement(n, k);
    EXPECT_EQ(fractional_cover(from_graph(g), CoverKind::kStrong).total, r(g.vertex_count(), clique_number(g)));
  }
}

TEST(CliqueCover, Values) {
  EXPECT_EQ(integer_clique_cover(cycle(5)).size, 3);
  EXPECT_EQ(integer_clique_cover(cycle(4)).size, 2);
  EXPECT_EQ(integer_clique_cover(complement(cycle(7))).size, 3);
  EXPECT_EQ(integer_clique_cover(petersen()).size, 5);
  EXPECT_EQ(integer_clique_cover(empty_graph(4)).size, 4);
}

TEST(CliqueCover, WitnessPartitionsIntoCliques) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_graph(2 + trial % 9, 0.5, rng);
    const auto cc = integer_clique_cover(g);
    MessageSet seen;
    for (const auto& c : cc.cliques) {
      for (int v : c) {
        EXPECT_FALSE(seen.contains(v));
        seen.insert(v);
        for (int w : c) EXPECT_TRUE(v == w || g.has_edge(v, w));
      }
    }
    EXPECT_EQ(seen, g.all());
    EXPECT_EQ(cc.size, static_cast<int>(cc.cliques.size()));
    EXPECT_GE(Rational(cc.size), fractional_cover(from_graph(g), CoverKind::kStrong).total);
  }
}

TEST(Minrk, Values) {
  EXPECT_EQ(minrk2_exact(cycle(5)).value, 3);
  EXPECT_EQ(minrk2_exact(empty_graph(4)).value, 4);
  EXPECT_EQ(minrk2_exact(complete_graph(4)).value, 1);
  EXPECT_THROW(minrk2_exact(petersen()), ResourceCapError);
}

TEST(Minrk, OddtownGramBound) {
  const auto odd = oddtown_trianglefree(6);
  const int n = odd.graph.vertex_count();
  Representation rep{2, FieldMatrix(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0))};
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int dot = 0;
      for (int e = 0; e < 6; ++e) dot += odd.incidence[static_cast<std::size_t>(a)][static_cast<std::size_t>(e)] * odd.incidence[static_cast<std::size_t>(b)][static_cast<std::size_t>(e)];
      rep.matrix[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = dot % 2;
    }
  }
  const auto res = minrk_bound(odd.graph, rep);
  EXPECT_FALSE(res.exact);
  EXPECT_LE(res.value, 6);
}

TEST(Minrk, HadamardGramHasRankThree) {
  const auto ph = projective_hadamard(3);
  const auto res = minrk_bound(ph.graph, Representation{3, ph.gram});
  EXPECT_EQ(res.value, 3);
}

TEST(Minrk, RejectsNonRepresentation) {
  FieldMatrix m(3, std::vector<int>(3, 1));
  EXPECT_THROW(minrk_bound(Graph(3), Representation{2, m}), std::invalid_argument);
  EXPECT_FALSE(check_representation(Graph(3), Representation{2, m}).empty());
}

TEST(Minrk, SandwichedOnRandomGraphs) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 200; ++trial) {
    Graph g = random_graph(3 + trial % 6, 0.35, rng);
    if (2 * g.edge_count() > 20) continue;
    const auto res = minrk2_exact(g, 20);
    EXPECT_TRUE(check_representation(g, res.representation).empty());
    EXPECT_EQ(rank_mod(res.representation.matrix, 2), res.value);
    EXPECT_GE(res.value, brute_independence(g));
    EXPECT_LE(res.value, integer_clique_cover(g).size);
  }
}

TEST(Linalg, ExpressInRows) {
  const FieldMatrix rows{{1, 0, 1}, {0, 1, 1}};
  const auto c = express_in_rows(rows, {1, 1, 0}, 2);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(*c, (std::vector<int>{1, 1}));
  EXPECT_FALSE(express_in_rows(rows, {1, 0, 0}, 2).has_value());
  EXPECT_EQ(next_prime_above(4), 5);
  EXPECT_EQ(next_prime_above(5), 7);
  EXPECT_EQ(field_inverse(3, 7), 5);
  EXPECT_EQ(basis_rows({{1, 1}, {2, 2}, {0, 1}}, 3), (std::vector<int>{0, 2}));
}
