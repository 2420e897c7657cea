#include <gtest/gtest.h>

#include <random>

#include "bcrate/codes.hpp"
#include "bcrate/errors.hpp"
#include "bcrate/families.hpp"
#include "bcrate/hierarchy.hpp"

using namespace bcrate;

namespace {

void expect_decodes(const Instance& inst, const CodeScheme& s, VerifyMode mode = VerifyMode::kAuto) {
  EXPECT_TRUE(check_scheme(inst, s).empty());
  VerifyOptions opts;
  opts.mode = mode;
  const auto report = verify_code(inst, s, opts);
  EXPECT_TRUE(report.pass) << s.name << " failed " << report.failure_count << " times";
  for (const auto& d : s.decoders) EXPECT_TRUE(d.complete);
}

}  // namespace

TEST(Codes, CliqueCoverOnC5) {
  const Graph c5 = cycle(5);
  const auto s = clique_cover_code(c5, {{0, 1}, {2, 3}, {4}});
  EXPECT_EQ(s.rate, 3);
  expect_decodes(from_graph(c5), s, VerifyMode::kExhaustive);
  EXPECT_EQ(verify_code(from_graph(c5), s).vectors, 32U);
}

TEST(Codes, CliqueCoverRejectsNonCliques) {
  EXPECT_THROW(clique_cover_code(cycle(5), {{0, 2}, {1}, {3}, {4}}), std::invalid_argument);
  EXPECT_THROW(clique_cover_code(cycle(5), {{0, 1}, {2, 3}}), std::invalid_argument);
}

TEST(Codes, DeletedRowIsCaught) {
  const Instance c5 = from_graph(cycle(5));
  auto s = clique_cover_code(cycle(5), {{0, 1}, {2, 3}, {4}});
  s.encoder.pop_back();
  s.rate = 2;
  attach_decoders(c5, s);
  EXPECT_FALSE(s.decoders[4].complete);
  const auto report = verify_code(c5, s);
  EXPECT_FALSE(report.pass);
  ASSERT_FALSE(report.failures.empty());
  EXPECT_EQ(report.failures.front().receiver, 4);
}

TEST(Codes, StrongCoverOnC5HasRateFiveHalves) {
  const Instance c5 = from_graph(cycle(5));
  const auto cover = fractional_cover(c5, CoverKind::kStrong);
  const auto s = strong_cover_code(c5, cover);
  EXPECT_EQ(s.rate, make_rational(5, 2));
  EXPECT_EQ(s.symbols_per_message, 2);
  expect_decodes(c5, s, VerifyMode::kExhaustive);
}

TEST(Codes, StrongCoverOnKneserComplement) {
  const Instance k = from_graph(kneser_complement(5, 2));
  const auto s = strong_cover_code(k, fractional_cover(k, CoverKind::kStrong));
  EXPECT_EQ(s.rate, make_rational(5, 2));
  expect_decodes(k, s);
}

TEST(Codes, MdsWeakCoverOnTri3HasRateThree) {
  const auto s = mds_weak_cover_code(tri3(), fractional_cover(tri3(), CoverKind::kWeak));
  EXPECT_EQ(s.rate, 3);
  expect_decodes(tri3(), s, VerifyMode::kExhaustive);
}

TEST(Codes, MdsWeakCoverOnC5) {
  const Instance c5 = from_graph(cycle(5));
  const auto s = mds_weak_cover_code(c5, fractional_cover(c5, CoverKind::kWeak));
  EXPECT_EQ(s.rate, make_rational(5, 2));
  EXPECT_EQ(s.field, 7);
  expect_decodes(c5, s);
}

TEST(Codes, MinrkCodes) {
  const Graph c5 = cycle(5);
  const auto rep = minrk2_exact(c5).representation;
  const auto s = minrk_code(c5, rep);
  EXPECT_EQ(s.rate, 3);
  expect_decodes(from_graph(c5), s, VerifyMode::kExhaustive);

  const auto odd = oddtown_trianglefree(6);
  FieldMatrix gram(odd.incidence.size(), std::vector<int>(odd.incidence.size(), 0));
  for (std::size_t a = 0; a < gram.size(); ++a) {
    for (std::size_t b = 0; b < gram.size(); ++b) {
      int dot = 0;
      for (std::size_t t = 0; t < odd.incidence[a].size(); ++t) dot += odd.incidence[a][t] * odd.incidence[b][t];
      gram[a][b] = dot % 2;
    }
  }
  const auto code = minrk_code(odd.graph, {2, gram});
  EXPECT_LE(code.rate, 6);
  expect_decodes(from_graph(odd.graph), code, VerifyMode::kExhaustive);
}

TEST(Codes, RandomizedModeReportsSeedAndWarning) {
  const Instance c5 = from_graph(cycle(5));
  const auto s = clique_cover_code(cycle(5), {{0, 1}, {2, 3}, {4}});
  VerifyOptions opts;
  opts.mode = VerifyMode::kRandomized;
  opts.trials = 1000;
  opts.seed = 7;
  const auto report = verify_code(c5, s, opts);
  EXPECT_TRUE(report.pass);
  EXPECT_EQ(report.seed, 7U);
  EXPECT_EQ(report.vectors, 1000U);
  EXPECT_FALSE(report.warning.empty());
  EXPECT_EQ(to_json(report)["seed"], 7);
}

TEST(Codes, ForcedExhaustivePastTheCapThrows) {
  const Instance k = from_graph(kneser_complement(5, 2));
  const auto s = strong_cover_code(k, fractional_cover(k, CoverKind::kStrong));
  VerifyOptions opts;
  opts.mode = VerifyMode::kExhaustive;
  opts.exhaustive_cap = 1000;
  EXPECT_THROW(verify_code(k, s, opts), ResourceCapError);
}

TEST(Codes, WeightedRatesAreRejected) {
  const Instance base = from_graph(cycle(5));
  const Instance w(5, base.receivers(), std::vector<Rational>(5, make_rational(1, 2)));
  EXPECT_THROW(strong_cover_code(w, fractional_cover(w, CoverKind::kStrong)), std::invalid_argument);
}

TEST(Codes, CoverCodesDecodeOnRandomInstances) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = random_instance(2 + trial % 5, 2 + trial % 6, 0.5, rng);
    const auto strong = fractional_cover(inst, CoverKind::kStrong);
    const auto weak = fractional_cover(inst, CoverKind::kWeak);
    const auto sc = strong_cover_code(inst, strong);
    const auto wc = mds_weak_cover_code(inst, weak);
    EXPECT_EQ(sc.rate, strong.total);
    EXPECT_EQ(wc.rate, weak.total);
    VerifyOptions opts;
    opts.trials = 2000;
    opts.seed = static_cast<std::uint64_t>(trial);
    EXPECT_TRUE(verify_code(inst, sc, opts).pass) << "strong, trial " << trial;
    EXPECT_TRUE(verify_code(inst, wc, opts).pass) << "weak, trial " << trial;
  }
}

TEST(Codes, JsonShape) {
  const auto s = clique_cover_code(cycle(5), {{0, 1}, {2, 3}, {4}});
  const auto j = to_json(s);
  EXPECT_EQ(j["rate"], "3/1");
  EXPECT_EQ(j["broadcast_symbols"], 3);
  EXPECT_EQ(j["decoders"].size(), 5U);
}

TEST(Codes, TrivialCovers) {
  Graph k4(4);
  for (int u = 0; u < 4; ++u) {
    for (int v = u + 1; v < 4; ++v) k4.add_edge(u, v);
  }
  const auto whole = clique_cover_code(k4, {{0, 1, 2, 3}});
  EXPECT_EQ(whole.rate, 1);
  expect_decodes(from_graph(k4), whole, VerifyMode::kExhaustive);

  const Graph empty(4);
  const auto singletons = clique_cover_code(empty, {{0}, {1}, {2}, {3}});
  EXPECT_EQ(singletons.rate, 4);
  expect_decodes(from_graph(empty), singletons, VerifyMode::kExhaustive);

  FieldMatrix identity(4, std::vector<int>(4, 0));
  for (int i = 0; i < 4; ++i) identity[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  EXPECT_EQ(minrk_code(empty, {2, identity}).rate, 4);
}

TEST(Codes, IntegerStrongCoverMatchesCliqueCover) {
  // Two disjoint edges: the optimum is integral, so q = 1 and the code is the clique-cover XOR code.
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  const Instance inst = from_graph(g);
  const auto s = strong_cover_code(inst, fractional_cover(inst, CoverKind::kStrong));
  EXPECT_EQ(s.symbols_per_message, 1);
  EXPECT_EQ(s.rate, 2);
  expect_decodes(inst, s, VerifyMode::kExhaustive);
}

TEST(Codes, HadamardGramHasRankThree) {
  const auto h = projective_hadamard(3);
  const auto s = minrk_code(h.graph, {3, h.gram});
  EXPECT_EQ(s.rate, 3);
  EXPECT_EQ(s.field, 3);
  expect_decodes(from_graph(h.graph), s);
}

TEST(Codes, VerifiedRatesNeverBeatB2) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = random_instance(3 + trial % 4, 3 + trial % 5, 0.5, rng);
    const Rational b2 = solve_bk(inst, 2).value;
    const auto s = strong_cover_code(inst, fractional_cover(inst, CoverKind::kStrong));
    const auto w = mds_weak_cover_code(inst, fractional_cover(inst, CoverKind::kWeak));
    ASSERT_TRUE(verify_code(inst, s).pass);
    ASSERT_TRUE(verify_code(inst, w).pass);
    EXPECT_GE(s.rate, b2);
    EXPECT_GE(w.rate, b2);
  }
}
