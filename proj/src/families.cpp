#include "bcrate/families.hpp"

#include <algorithm>
#include <stdexcept>

namespace bcrate {

Graph cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph circulant(int n, int k) {
  if (n < 4 || k < 1 || 2 * k >= n - 1) throw std::invalid_argument("circulant needs n >= 4 and 1 <= k < (n-1)/2");
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int s = 1; s <= k; ++s) g.add_edge(i, (i + s) % n);
  }
  return g;
}

Graph cayley_3regular(int n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("cayley_3regular needs even n >= 4");
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    g.add_edge(i, (i + 1) % n);
    g.add_edge(i, (i + n / 2) % n);
  }
  return g;
}

namespace {

std::vector<MessageSet> k_subsets(int n, int k) {
  std::vector<MessageSet> out;
  std::vector<int> pick(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
  for (;;) {
    MessageSet s;
    for (int x : pick) s.insert(x);
    out.push_back(s);
    int i = k - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

}  // namespace

Graph kneser_complement(int n, int k) {
  if (k < 1 || n <= 2 * k) throw std::invalid_argument("kneser_complement needs n > 2k >= 2");
  const auto sets = k_subsets(n, k);
  if (sets.size() > static_cast<std::size_t>(kMaxMessages)) throw std::invalid_argument("kneser_complement: too many vertices");
  Graph g(static_cast<int>(sets.size()));
  for (std::size_t a = 0; a < sets.size(); ++a) {
    for (std::size_t b = a + 1; b < sets.size(); ++b) {
      if (sets[a].intersects(sets[b])) g.add_edge(static_cast<int>(a), static_cast<int>(b));
    }
  }
  return g;
}

namespace {

bool is_odd_prime(int q) {
  if (q < 3 || q % 2 == 0) return false;
  for (int d = 3; d * d <= q; d += 2) {
    if (q % d == 0) return false;
  }
  return true;
}

}  // namespace

ProjectiveHadamard projective_hadamard(int q) {
  if (!is_odd_prime(q)) throw std::invalid_argument("projective_hadamard needs an odd prime q");
  ProjectiveHadamard out;
  out.q = q;
  for (int x = 0; x < q; ++x) {
    for (int y = 0; y < q; ++y) {
      for (int z = 0; z < q; ++z) {
        const int lead = x != 0 ? x : y != 0 ? y : z;
        if (lead != 1) continue;
        if ((x * x + y * y + z * z) % q == 0) continue;
        out.points.push_back({x, y, z});
      }
    }
  }
  const int n = static_cast<int>(out.points.size());
  if (n > kMaxMessages) throw std::invalid_argument("projective_hadamard: too many vertices");
  out.graph = Graph(n);
  out.gram.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const auto& u = out.points[static_cast<std::size_t>(a)];
      const auto& v = out.points[static_cast<std::size_t>(b)];
      const int dot = (u[0] * v[0] + u[1] * v[1] + u[2] * v[2]) % q;
      out.gram[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = dot;
      if (a < b && dot != 0) out.graph.add_edge(a, b);
    }
  }
  return out;
}

OddtownFamily oddtown_trianglefree(int m) {
  if (m <= 0 || m % 6 != 0) throw std::invalid_argument("oddtown_trianglefree needs a positive multiple of 6");
  std::vector<std::vector<int>> sets;
  for (int block = 0; block < m / 6; ++block) {
    const int base = 6 * block;
    for (int i = 0; i < 5; ++i) sets.push_back({base + i});
    for (int a = 0; a < 5; ++a) {
      for (int b = a + 1; b < 5; ++b) sets.push_back({base + a, base + b, base + 5});
    }
    sets.push_back({base, base + 1, base + 2, base + 3, base + 4});
  }
  const int n = static_cast<int>(sets.size());
  if (n > kMaxMessages) throw std::invalid_argument("oddtown_trianglefree: too many vertices");
  OddtownFamily out;
  out.graph = Graph(n);
  out.incidence.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(m), 0));
  for (int v = 0; v < n; ++v) {
    for (int e : sets[static_cast<std::size_t>(v)]) out.incidence[static_cast<std::size_t>(v)][static_cast<std::size_t>(e)] = 1;
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      int common = 0;
      for (int e = 0; e < m; ++e) {
        common += out.incidence[static_cast<std::size_t>(a)][static_cast<std::size_t>(e)] &
                  out.incidence[static_cast<std::size_t>(b)][static_cast<std::size_t>(e)];
      }
      if (common % 2 == 1) out.graph.add_edge(a, b);
    }
  }
  return out;
}

Instance aac_instance(int n) {
  if (n < 1) throw std::invalid_argument("aac_instance needs n >= 1");
  const int count = 2 * n + 1;
  if (count > kMaxMessages) throw std::invalid_argument("aac_instance: too many messages");
  auto vertex = [n](int i) { return i + n; };
  const MessageSet all = MessageSet::full(count);
  std::vector<Receiver> receivers;
  for (int i = 0; i <= n; ++i) {
    const int wants = vertex(i - n);
    MessageSet unknown{vertex(i)};
    if (i < n) unknown.insert(vertex(i + 1));
    receivers.push_back({wants, all - unknown - MessageSet::singleton(wants)});
  }
  for (int i = 1; i <= n; ++i) receivers.push_back({vertex(i), all - MessageSet::singleton(vertex(i))});
  return Instance(count, std::move(receivers));
}

Instance tri3() { return Instance(3, {{1, MessageSet{0}}, {2, MessageSet{1}}, {0, MessageSet{2}}}); }

Graph petersen() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

Graph groetzsch() {
  Graph g(11);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(5 + i, (i + 1) % 5);
    g.add_edge(5 + i, (i + 4) % 5);
    g.add_edge(5 + i, 10);
  }
  return g;
}

Graph chvatal() {
  return Graph(12, {{0, 1}, {0, 4}, {0, 6}, {0, 9}, {1, 2}, {1, 5}, {1, 7}, {2, 3}, {2, 6}, {2, 8}, {3, 4}, {3, 7},
                    {3, 9}, {4, 5}, {4, 8}, {5, 10}, {5, 11}, {6, 10}, {6, 11}, {7, 8}, {7, 11}, {8, 10}, {9, 10}, {9, 11}});
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

Instance random_instance(int n, int receivers, double p, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::bernoulli_distribution coin(p);
  std::vector<Receiver> out;
  for (int j = 0; j < receivers; ++j) {
    Receiver r;
    r.wants = pick(rng);
    for (int v = 0; v < n; ++v) {
      if (v != r.wants && coin(rng)) r.knows.insert(v);
    }
    out.push_back(r);
  }
  return Instance(n, std::move(out));
}

// ---------------------------------------------------------------------------

namespace {

int param(const std::map<std::string, int>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw std::invalid_argument("missing parameter '" + key + "'");
  return it->second;
}

Rational frac(long p, long q) { return make_rational(p, q); }

}  // namespace

std::vector<std::string> family_names() {
  return {"cycle", "cocycle", "circulant", "cayley3", "kneser-complement", "hadamard",
          "oddtown", "aac", "tri3", "petersen", "groetzsch", "chvatal"};
}

FamilyOutput make_family(const std::string& family, const std::map<std::string, int>& params) {
  FamilyOutput out;
  out.family = family;
  out.params = params;
  auto set_graph = [&out](Graph g) {
    out.instance = from_graph(g);
    out.graph = std::move(g);
    out.symmetry = SymmetryGroup::trivial(out.instance.message_count());
  };
  if (family == "cycle") {
    const int n = param(params, "n");
    set_graph(cycle(n));
    out.symmetry = SymmetryGroup::cyclic(n);
    out.expected = {{"beta", frac(n, 2), "odd and even cycles: n/2"}, {"alpha", Rational(n / 2), "floor(n/2)"}};
  } else if (family == "cocycle") {
    const int n = param(params, "n");
    set_graph(complement(cycle(n)));
    out.symmetry = SymmetryGroup::cyclic(n);
    out.expected = {{"beta", frac(n, n / 2), "complement of a cycle: n/floor(n/2)"}};
  } else if (family == "circulant") {
    const int n = param(params, "n");
    const int k = param(params, "k");
    set_graph(circulant(n, k));
    out.symmetry = SymmetryGroup::cyclic(n);
    out.expected = {{"beta", frac(n, k + 1), "circulant with generators ±1..±k: n/(k+1)"}};
  } else if (family == "cayley3") {
    const int n = param(params, "n");
    set_graph(cayley_3regular(n));
    out.symmetry = SymmetryGroup::cyclic(n);
    out.expected = {{"beta", frac(n, 2), "3-regular Cayley graph of Z_n: n/2"}};
  } else if (family == "kneser-complement") {
    const int n = param(params, "n");
    const int k = param(params, "k");
    set_graph(kneser_complement(n, k));
    // Rotation of the ground set permutes the k-subsets.
    const auto sets = k_subsets(n, k);
    Permutation p(sets.size());
    for (std::size_t a = 0; a < sets.size(); ++a) {
      MessageSet rotated;
      for (int x : sets[a].elements()) rotated.insert((x + 1) % n);
      p[a] = static_cast<int>(std::find(sets.begin(), sets.end(), rotated) - sets.begin());
    }
    out.symmetry = SymmetryGroup(static_cast<int>(sets.size()), {p});
    out.expected = {{"chibar_f", frac(n, k), "vertex-transitive: N/omega = n/k"}};
  } else if (family == "hadamard") {
    set_graph(projective_hadamard(param(params, "q")).graph);
    out.expected = {{"beta", Rational(3), "Gram representation of rank 3"}, {"alpha", Rational(3), "standard basis"}};
  } else if (family == "oddtown") {
    const int m = param(params, "m");
    set_graph(oddtown_trianglefree(m).graph);
    out.expected = {{"minrk2_upper", Rational(m), "rank of F F^T over GF(2) is at most m"}};
  } else if (family == "aac") {
    const int n = param(params, "n");
    out.instance = aac_instance(n);
    out.symmetry = SymmetryGroup::trivial(out.instance.message_count());
    out.expected = {{"beta_lower", Rational(2) + frac(1, n), "almost alternating cycle: 2 + 1/n"}};
  } else if (family == "tri3") {
    out.instance = tri3();
    out.symmetry = SymmetryGroup::cyclic(3);
    out.expected = {{"b2", Rational(2), "exact LP"}, {"b3", Rational(3), "third level exceeds beta"},
                    {"beta_upper", Rational(2), "code a+b, b+c"}};
  } else if (family == "petersen") {
    set_graph(petersen());
    out.symmetry = SymmetryGroup::cyclic_blocks(10, 5);
    out.expected = {{"alpha", Rational(4), ""}, {"beta", Rational(5), "b2 = beta = chibar_f"}};
  } else if (family == "groetzsch") {
    set_graph(groetzsch());
    Permutation p(11);
    for (int i = 0; i < 5; ++i) {
      p[static_cast<std::size_t>(i)] = (i + 1) % 5;
      p[static_cast<std::size_t>(5 + i)] = 5 + (i + 1) % 5;
    }
    p[10] = 10;
    out.symmetry = SymmetryGroup(11, {p});
    out.expected = {{"alpha", Rational(5), ""}, {"beta", frac(11, 2), "b2 = beta = chibar_f"}};
  } else if (family == "chvatal") {
    set_graph(chvatal());
    out.expected = {{"alpha", Rational(4), ""}, {"beta", Rational(6), "b2 = beta = chibar_f"}};
  } else {
    throw std::invalid_argument("unknown family '" + family + "'");
  }
  return out;
}

}  // namespace bcrate
