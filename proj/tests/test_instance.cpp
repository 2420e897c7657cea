#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "bcrate/instance.hpp"

using namespace bcrate;

namespace {

Graph cycle5() { return Graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}); }

Instance tri3() {
  return Instance(3, {{1, MessageSet{0}}, {2, MessageSet{1}}, {0, MessageSet{2}}});
}

// Independence number by brute force; used as an additivity oracle.
int independence_number(const Graph& g) {
  int best = 0;
  const int n = g.vertex_count();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const MessageSet s(mask);
    bool ok = true;
    for (int v : s.elements()) ok = ok && !g.neighbors(v).intersects(s);
    if (ok) best = std::max(best, s.size());
  }
  return best;
}

Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) g.add_edge(u, v);
    }
  }
  return g;
}

}  // namespace

TEST(Instance, ValidateFlagsProblems) {
  EXPECT_TRUE(validate(from_graph(cycle5())).ok());
  const Instance own(3, {{0, MessageSet{0, 1}}});
  const auto report = validate(own);
  ASSERT_EQ(report.violations.size(), 1U);
  EXPECT_NE(report.violations[0].find("receiver knows own message"), std::string::npos);
  const Instance zero(3, {{0, MessageSet{1}}}, {Rational(1), Rational(1), Rational(0)});
  const auto zr = validate(zero);
  ASSERT_FALSE(zr.ok());
  EXPECT_NE(zr.violations[0].find("nonpositive rate"), std::string::npos);
  EXPECT_THROW(Instance(0, {}), std::invalid_argument);
  EXPECT_THROW(Instance(65, {}), std::invalid_argument);
}

TEST(Instance, FromGraph) {
  const Instance c5 = from_graph(cycle5());
  EXPECT_EQ(c5.receiver_count(), 5);
  EXPECT_EQ(c5.receiver(0).knows, (MessageSet{1, 4}));
  const Instance empty = from_graph(Graph(3));
  for (const auto& r : empty.receivers()) EXPECT_TRUE(r.knows.empty());
  const Instance k3 = from_graph(Graph(3, {{0, 1}, {1, 2}, {0, 2}}));
  EXPECT_EQ(k3.receiver(1).knows, (MessageSet{0, 2}));
}

TEST(Instance, SideAndUnknown) {
  const Instance c5 = from_graph(cycle5());
  EXPECT_EQ(c5.side(0), (MessageSet{0, 1, 4}));
  EXPECT_EQ(c5.unknown(0), (MessageSet{2, 3}));
}

TEST(Instance, ClosureStep) {
  const Instance c5 = from_graph(cycle5());
  EXPECT_EQ(closure_step(c5, MessageSet{1, 2, 3, 4}), c5.all());
  EXPECT_EQ(closure_step(tri3(), MessageSet{0}), (MessageSet{0, 1}));
  EXPECT_EQ(closure_step(tri3(), tri3().all()), tri3().all());
  EXPECT_EQ(closure(tri3(), MessageSet{0}), tri3().all());
}

TEST(Instance, Decodes) {
  const Instance c5 = from_graph(cycle5());
  EXPECT_TRUE(decodes(c5, MessageSet{1, 2, 3, 4}, c5.all()));
  EXPECT_FALSE(decodes(c5, MessageSet{2, 3}, c5.all()));
  EXPECT_TRUE(decodes(c5, MessageSet{2, 3}, MessageSet{2, 3}));
  EXPECT_FALSE(decodes(c5, MessageSet{2, 3}, MessageSet{2}));
}

TEST(Instance, ClosureMonotoneAndInflationary) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = from_graph(random_graph(6, 0.4, rng));
    for (std::uint64_t a = 0; a < 64; ++a) {
      const MessageSet sa(a);
      const MessageSet ca = closure_step(inst, sa);
      EXPECT_TRUE(sa.subset_of(ca));
      for (std::uint64_t b = a; b < 64; b = (b + 1) | a) {
        EXPECT_TRUE(ca.subset_of(closure_step(inst, MessageSet(b))));
      }
    }
  }
}

TEST(Instance, DisjointUnion) {
  const Instance u = disjoint_union(from_graph(cycle5()), from_graph(cycle5()));
  EXPECT_EQ(u.message_count(), 10);
  EXPECT_EQ(u.receiver_count(), 10);
  EXPECT_EQ(u.receiver(5).wants, 5);
  EXPECT_EQ(u.receiver(5).knows, (MessageSet{6, 9}));
  EXPECT_TRUE(validate(u).ok());
  const Instance k1 = from_graph(Graph(1));
  const Instance two = disjoint_union(k1, k1);
  EXPECT_EQ(two.receiver_count(), 2);
  EXPECT_TRUE(two.receiver(1).knows.empty());

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph a = random_graph(5, 0.5, rng);
    const Graph b = random_graph(4, 0.5, rng);
    EXPECT_EQ(independence_number(disjoint_union(a, b)), independence_number(a) + independence_number(b));
  }
}

TEST(Instance, BlowUp) {
  const Graph k22 = blow_up(Graph(2, {{0, 1}}), 2);
  EXPECT_EQ(k22.vertex_count(), 4);
  EXPECT_EQ(k22.edge_count(), 4);
  EXPECT_FALSE(k22.has_edge(0, 1));
  EXPECT_EQ(blow_up(cycle5(), 1), cycle5());
  const Graph c5x2 = blow_up(cycle5(), 2);
  EXPECT_EQ(c5x2.vertex_count(), 10);
  EXPECT_EQ(c5x2.edge_count(), 20);
}

TEST(Instance, Complement) {
  const Graph c = complement(cycle5());
  EXPECT_EQ(c.edge_count(), 5);
  EXPECT_TRUE(c.has_edge(0, 2));
  EXPECT_EQ(complement(c), cycle5());
}

TEST(Instance, Induced) {
  const auto sub = induced(from_graph(cycle5()), MessageSet{0, 1, 3});
  EXPECT_EQ(sub.instance.message_count(), 3);
  EXPECT_EQ(sub.messages, (std::vector<int>{0, 1, 3}));
  EXPECT_EQ(sub.instance.receiver(0).knows, (MessageSet{1}));
  EXPECT_TRUE(sub.instance.receiver(2).knows.empty());
}

TEST(Instance, Normalization) {
  const Instance w(2, {{0, {}}, {1, {}}}, {make_rational(1, 2), Rational(2)});
  const Instance nw = w.normalized();
  EXPECT_EQ(nw.rate(0), make_rational(1, 4));
  EXPECT_EQ(nw.rate(1), Rational(1));
  EXPECT_EQ(nw.rate_scale(), Rational(2));
}

TEST(Instance, JsonRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path();
  const Instance w(3, {{0, MessageSet{1}}, {2, MessageSet{0, 1}}, {0, MessageSet{1}}},
                   {make_rational(1, 2), Rational(1), make_rational(1, 3)});
  write_instance(w, dir / "bcrate_roundtrip.json");
  EXPECT_EQ(read_instance(dir / "bcrate_roundtrip.json"), w);
  const Instance c5 = from_graph(cycle5());
  write_instance(c5, dir / "bcrate_c5.json");
  EXPECT_EQ(read_instance(dir / "bcrate_c5.json"), c5);
  write_graph(cycle5(), dir / "bcrate_g.json");
  EXPECT_EQ(read_graph(dir / "bcrate_g.json"), cycle5());
  const auto loaded = load_any(dir / "bcrate_g.json");
  ASSERT_TRUE(loaded.graph.has_value());
  EXPECT_EQ(loaded.instance, c5);
}

TEST(Instance, JsonErrorsCarryContext) {
  const auto bad = nlohmann::json::parse(R"({"n": 3, "receivers": [{"wants": 0, "knows": [1]}, {"wants": "x", "knows": []}]})");
  try {
    instance_from_json(bad);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("receivers[1].wants"), std::string::npos);
  }
  const auto out_of_range = nlohmann::json::parse(R"({"n": 2, "edges": [[0, 5]]})");
  EXPECT_THROW(graph_from_json(out_of_range), ParseError);
  const auto path = std::filesystem::temp_directory_path() / "bcrate_bad.json";
  std::ofstream(path) << "{ not json";
  EXPECT_THROW(read_instance(path), ParseError);
}
