#include <gtest/gtest.h>

#include <random>

#include "bcrate/approx.hpp"
#include "bcrate/families.hpp"

using namespace bcrate;

namespace {

Rational r(long p, long q = 1) { return make_rational(p, q); }

Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

int max_unknown(const Instance& inst) {
  int d = 0;
  for (int j = 0; j < inst.receiver_count(); ++j) d = std::max(d, inst.unknown(j).size());
  return d;
}

Rational coverage_of(const FractionalCover& cover, int receiver) {
  Rational got = 0;
  for (const auto& c : cover.cliques) {
    if (std::find(c.members.begin(), c.members.end(), receiver) != c.members.end()) got += c.weight;
  }
  return got;
}

Instance with_rates(const Instance& inst, std::mt19937_64& rng) {
  std::vector<Rational> rates;
  for (int i = 0; i < inst.message_count(); ++i) rates.push_back(r(1 + static_cast<long>(rng() % 16), 16));
  return Instance(inst.message_count(), inst.receivers(), rates);
}

}  // namespace

TEST(LowDegree, CompleteGraphWithZeroDegree) {
  const Instance k3 = from_graph(complete_graph(3));
  const auto low = low_degree_cover(k3, 0);
  EXPECT_LE(low.cover.total, 2);
  EXPECT_TRUE(check_cover(k3, low.cover).empty());
}

TEST(LowDegree, TightReceiverGetsExactlyTheBound) {
  // Receiver 0 misses exactly d = 2 messages, so |U(0)| = 2d+1 and P = 1/(4d+2).
  const Instance inst(5, {{0, MessageSet{1, 2}}, {1, MessageSet{0, 2, 3, 4}}, {3, MessageSet{0, 1, 4}}});
  const auto low = low_degree_cover(inst, 2);
  EXPECT_EQ(coverage_of(low.cover, 0), 1);
  EXPECT_EQ(low.mode, SamplingMode::kExact);
  EXPECT_LE(low.cover.total, 10);
}

TEST(LowDegree, PreconditionNamesReceiver) {
  try {
    low_degree_cover(from_graph(cycle(5)), 1);
    FAIL() << "expected an error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("receiver 0"), std::string::npos);
  }
}

TEST(LowDegree, WeightBoundAndCoverageOnRandomInstances) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = random_instance(2 + trial % 8, 2 + trial % 7, 0.6, rng);
    const int d = max_unknown(inst) + static_cast<int>(trial % 2);
    const auto low = low_degree_cover(inst, d);
    EXPECT_LE(low.cover.total, 4 * d + 2);
    EXPECT_TRUE(check_cover(inst.unweighted(), low.cover).empty());
  }
}

TEST(LowDegree, MonteCarloModeStillCovers) {
  std::mt19937_64 rng(22);
  ApproxOptions opts;
  opts.force_monte_carlo = true;
  opts.samples = 4000;
  for (int trial = 0; trial < 5; ++trial) {
    const Instance inst = random_instance(6, 6, 0.7, rng);
    const auto low = low_degree_cover(inst, max_unknown(inst), opts);
    EXPECT_EQ(low.mode, SamplingMode::kMonteCarlo);
    EXPECT_TRUE(check_cover(inst.unweighted(), low.cover).empty());
    EXPECT_LE(low.cover.total, low.bound);
  }
}

TEST(ExpandingOrCover, Examples) {
  const auto t = find_expanding_or_cover(tri3(), 1);
  ASSERT_TRUE(t.sequence.has_value());
  EXPECT_EQ(t.sequence->receivers.size(), 2U);
  EXPECT_TRUE(check_outcome(tri3(), t).empty());

  const Instance k4 = from_graph(complete_graph(4));
  const auto single = find_expanding_or_cover(k4, 1);
  ASSERT_TRUE(single.cover.has_value());
  EXPECT_LE(single.cover->total, 6);

  const Instance c5 = from_graph(cycle(5));
  const auto out = find_expanding_or_cover(c5, 2);
  ASSERT_TRUE(out.cover.has_value());
  EXPECT_TRUE(check_outcome(c5, out).empty());
  EXPECT_LE(out.cover->total * out.cover->total, Rational(144 * 5));
}

TEST(ExpandingOrCover, CertificatesReverifyOnRandomInstances) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = random_instance(3 + trial % 10, 3 + trial % 9, 0.5, rng);
    const int k = 1 + trial % 4;
    const auto out = find_expanding_or_cover(inst, k);
    const auto problems = check_outcome(inst, out);
    EXPECT_TRUE(problems.empty()) << (problems.empty() ? "" : problems.front());
    // A cover only certifies alpha <= psi_f <= its weight; the low-degree branch fires whatever alpha is.
    if (out.cover) EXPECT_LE(alpha_exact(inst.unweighted()).weight, out.cover->total);
    if (out.sequence) EXPECT_GE(alpha_exact(inst.unweighted()).weight, k + 1);
  }
}

TEST(Tau, UnitRatesUseOneClass) {
  const Instance c7 = from_graph(cycle(7));
  const auto cert = tau(c7);
  ASSERT_EQ(cert.classes.size(), 1U);
  EXPECT_EQ(cert.classes[0].s, 1);
  EXPECT_EQ(cert.tau, cert.classes[0].term);
  EXPECT_LE(cert.tau, 7);
  EXPECT_TRUE(check_tau(c7, cert).empty());
}

TEST(Tau, ShiftedRatesUseClassTwo) {
  const Instance base = from_graph(cycle(6));
  const Instance inst(6, base.receivers(), std::vector<Rational>(6, r(1, 2)));
  const auto cert = tau(inst);
  ASSERT_EQ(cert.classes.size(), 1U);
  EXPECT_EQ(cert.classes[0].s, 2);
  EXPECT_EQ(cert.classes[0].trivial_term, r(1, 4) * 12);
  EXPECT_TRUE(check_tau(inst, cert).empty());
}

TEST(Tau, SmallInstancesFallBack) {
  const auto cert = tau(tri3());
  EXPECT_TRUE(cert.small_n_fallback);
  EXPECT_EQ(cert.tau, 3);
  EXPECT_TRUE(check_tau(tri3(), cert).empty());
}

TEST(Tau, UpperBoundsPsiOnWeightedInstances) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = with_rates(random_instance(trial < 4 ? 20 : 4 + trial % 9, 12, 0.5, rng), rng);
    const auto cert = tau(inst);
    const auto problems = check_tau(inst, cert);
    EXPECT_TRUE(problems.empty()) << (problems.empty() ? "" : problems.front());
    EXPECT_GE(cert.tau, fractional_cover(inst, CoverKind::kWeak).total);
  }
}

TEST(Tau, RatioBoundHolds) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = random_instance(4 + trial % 9, 3 + trial % 10, 0.5, rng);
    const auto cert = tau(inst);
    ASSERT_TRUE(cert.ratio_bound.has_value());
    const Rational alpha = alpha_exact(inst).weight;
    EXPECT_LE(cert.tau, inst.message_count());
    EXPECT_LE(cert.tau, alpha * cert.ratio_bound->lower);
  }
}

TEST(ApproxBeta, Petersen) {
  const Instance p = from_graph(petersen());
  const auto a = approximate_beta(p);
  EXPECT_GE(a.upper, 5);
  EXPECT_LE(a.lower, 4);
  EXPECT_LE(a.upper, 10);
  EXPECT_TRUE(is_expanding_sequence(p, a.lower_witness.receivers));
}
