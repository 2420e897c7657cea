#include "bcrate/beta2.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "bcrate/combinatorics.hpp"
#include "bcrate/linalg.hpp"

namespace bcrate {

namespace {

struct ForestEdge {
  int to;
  int receiver;
};

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int v) {
    while (parent_[static_cast<std::size_t>(v)] != v) {
      auto& p = parent_[static_cast<std::size_t>(v)];
      p = parent_[static_cast<std::size_t>(p)];
      v = p;
    }
    return v;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[static_cast<std::size_t>(b)] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

// Tree path from `from` to `to` as (vertices, labels of the edges between them).
std::pair<std::vector<int>, std::vector<int>> forest_path(const std::vector<std::vector<ForestEdge>>& forest, int from, int to) {
  std::vector<int> prev(forest.size(), -1);
  std::vector<int> via(forest.size(), -1);
  std::vector<bool> seen(forest.size(), false);
  std::queue<int> queue;
  queue.push(from);
  seen[static_cast<std::size_t>(from)] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    if (v == to) break;
    for (const auto& e : forest[static_cast<std::size_t>(v)]) {
      if (seen[static_cast<std::size_t>(e.to)]) continue;
      seen[static_cast<std::size_t>(e.to)] = true;
      prev[static_cast<std::size_t>(e.to)] = v;
      via[static_cast<std::size_t>(e.to)] = e.receiver;
      queue.push(e.to);
    }
  }
  std::vector<int> vertices{to};
  std::vector<int> labels;
  for (int v = to; v != from; v = prev[static_cast<std::size_t>(v)]) {
    labels.push_back(via[static_cast<std::size_t>(v)]);
    vertices.push_back(prev[static_cast<std::size_t>(v)]);
  }
  std::reverse(vertices.begin(), vertices.end());
  std::reverse(labels.begin(), labels.end());
  return {vertices, labels};
}

}  // namespace

std::vector<std::pair<int, int>> sharp_relation(const Instance& inst) {
  std::vector<std::pair<int, int>> pairs;
  for (int j = 0; j < inst.receiver_count(); ++j) {
    const auto t = inst.unknown(j).elements();
    for (std::size_t a = 0; a < t.size(); ++a) {
      for (std::size_t b = a + 1; b < t.size(); ++b) pairs.emplace_back(t[a], t[b]);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

std::vector<std::string> validate_aac(const Instance& inst, const AacWitness& w) {
  std::vector<std::string> problems;
  const int n = w.n();
  if (n < 1) return {"an almost alternating cycle needs at least two receivers"};
  if (static_cast<int>(w.vertices.size()) != 2 * n + 1) return {"expected 2n+1 vertices"};
  for (int r : w.receivers) {
    if (r < 0 || r >= inst.receiver_count()) return {"receiver index out of range"};
  }
  for (int v : w.vertices) {
    if (v < 0 || v >= inst.message_count()) return {"vertex index out of range"};
  }
  // vertices[k] is v_{k-n}.
  auto v = [&](int i) { return w.vertices[static_cast<std::size_t>(i + n)]; };
  for (int i = 0; i <= n; ++i) {
    const int j = w.receivers[static_cast<std::size_t>(i)];
    const std::string tag = "j_" + std::to_string(i) + " (receiver " + std::to_string(j) + ")";
    if (inst.receiver(j).wants != v(i - n)) problems.push_back(tag + " does not want v_" + std::to_string(i - n));
    const MessageSet t = inst.unknown(j);
    if (!t.contains(v(i))) problems.push_back("T of " + tag + " misses v_" + std::to_string(i));
    if (i < n && !t.contains(v(i + 1))) problems.push_back("T of " + tag + " misses v_" + std::to_string(i + 1));
  }
  return problems;
}

std::vector<std::string> check_compatible(const Instance& inst, const std::vector<int>& labeling) {
  if (static_cast<int>(labeling.size()) != inst.message_count()) return {"labeling size differs from the message count"};
  std::vector<std::string> problems;
  for (int j = 0; j < inst.receiver_count(); ++j) {
    const int u = labeling[static_cast<std::size_t>(inst.receiver(j).wants)];
    std::optional<int> t;
    bool ok = u >= 0;
    for (int v : inst.unknown(j).elements()) {
      const int c = labeling[static_cast<std::size_t>(v)];
      if (c < 0) continue;
      if (t && *t != c) ok = false;
      t = c;
    }
    if (t && *t == u) ok = false;
    if (!ok) problems.push_back("receiver " + std::to_string(j) + " is not compatible");
  }
  return problems;
}

Beta2Certificate decide_beta_eq_2(const Instance& inst) {
  Beta2Certificate cert;
  std::vector<int> all_receivers(static_cast<std::size_t>(inst.receiver_count()));
  std::iota(all_receivers.begin(), all_receivers.end(), 0);
  if (is_weak_hyperclique(inst, all_receivers)) {
    cert.reason = "beta_below_2";
    return cert;
  }

  MessageSet wanted;
  for (const auto& r : inst.receivers()) wanted.insert(r.wants);
  const InducedInstance sub = induced(inst, wanted);
  const Instance& h = sub.instance;
  const int n = h.message_count();

  UnionFind uf(n);
  std::vector<std::vector<ForestEdge>> forest(static_cast<std::size_t>(n));
  for (int j = 0; j < h.receiver_count(); ++j) {
    const auto t = h.unknown(j).elements();
    for (std::size_t k = 1; k < t.size(); ++k) {
      if (!uf.unite(t[0], t[k])) continue;
      forest[static_cast<std::size_t>(t[0])].push_back({t[k], j});
      forest[static_cast<std::size_t>(t[k])].push_back({t[0], j});
    }
  }

  for (int j = 0; j < h.receiver_count(); ++j) {
    const MessageSet t = h.unknown(j);
    if (t.empty()) continue;
    const int f = h.receiver(j).wants;
    if (uf.find(f) != uf.find(t.first())) continue;
    // f(j) ~ v for v ∈ T(j): the ♯-path v_0 = f(j), ..., v_n = v closes an almost alternating cycle.
    const auto [path, labels] = forest_path(forest, f, t.first());
    AacWitness w;
    for (int label : labels) w.vertices.push_back(sub.messages[static_cast<std::size_t>(h.receiver(label).wants)]);
    for (int v : path) w.vertices.push_back(sub.messages[static_cast<std::size_t>(v)]);
    for (int label : labels) w.receivers.push_back(sub.receivers[static_cast<std::size_t>(label)]);
    w.receivers.push_back(sub.receivers[static_cast<std::size_t>(j)]);
    cert.reason = "almost_alternating_cycle";
    cert.lower_bound = Rational(2) + make_rational(1, w.n());
    cert.aac = std::move(w);
    return cert;
  }

  cert.is_two = true;
  cert.reason = "compatible_labeling";
  cert.labeling.assign(static_cast<std::size_t>(inst.message_count()), -1);
  std::vector<int> class_of_root(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    auto& c = class_of_root[static_cast<std::size_t>(uf.find(v))];
    if (c < 0) c = cert.class_count++;
    cert.labeling[static_cast<std::size_t>(sub.messages[static_cast<std::size_t>(v)])] = c;
  }
  const auto rates = inst.rates();
  if (std::all_of(rates.begin(), rates.end(), [](const Rational& r) { return r == 1; })) {
    cert.scheme = two_symbol_code(inst, cert.labeling);
  }
  return cert;
}

CodeScheme two_symbol_code(const Instance& inst, const std::vector<int>& labeling) {
  for (const auto& r : inst.rates()) {
    if (r != 1) throw std::invalid_argument("two_symbol_code needs unit rates");
  }
  if (const auto problems = check_compatible(inst, labeling); !problems.empty()) throw std::invalid_argument(problems.front());
  const int classes = *std::max_element(labeling.begin(), labeling.end()) + 1;
  CodeScheme s;
  s.name = "twosymbol";
  s.field = next_prime_above(classes);
  s.message_count = inst.message_count();
  std::vector<int> y(labeling.size(), 0);
  std::vector<int> z(labeling.size(), 0);
  for (std::size_t v = 0; v < labeling.size(); ++v) {
    if (labeling[v] < 0) continue;
    y[v] = 1;
    z[v] = labeling[v];
  }
  s.encoder = {y, z};
  s.rate = 2;
  attach_decoders(inst, s);
  return s;
}

bool undirected_beta2(const Graph& g) {
  const Graph c = complement(g);
  if (c.edge_count() == 0) throw std::invalid_argument("undirected_beta2 needs a graph with a non-edge");
  const int n = c.vertex_count();
  std::vector<int> side(static_cast<std::size_t>(n), -1);
  for (int s = 0; s < n; ++s) {
    if (side[static_cast<std::size_t>(s)] >= 0) continue;
    side[static_cast<std::size_t>(s)] = 0;
    std::queue<int> queue;
    queue.push(s);
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop();
      for (int w = 0; w < n; ++w) {
        if (w == v || !c.has_edge(v, w)) continue;
        auto& sw = side[static_cast<std::size_t>(w)];
        if (sw < 0) {
          sw = 1 - side[static_cast<std::size_t>(v)];
          queue.push(w);
        } else if (sw == side[static_cast<std::size_t>(v)]) {
          return false;
        }
      }
    }
  }
  return true;
}

nlohmann::json to_json(const Beta2Certificate& cert) {
  nlohmann::json out = {{"verdict", cert.is_two}, {"reason", cert.reason}};
  if (cert.is_two) {
    out["labeling"] = cert.labeling;
    out["classes"] = cert.class_count;
  }
  if (cert.aac) out["aac_witness"] = {{"n", cert.aac->n()}, {"vertices", cert.aac->vertices}, {"receivers", cert.aac->receivers}};
  if (cert.lower_bound) out["bound"] = to_string(*cert.lower_bound);
  if (cert.scheme) {
    out["scheme"] = {{"name", cert.scheme->name}, {"field", cert.scheme->field}, {"rate", to_string(cert.scheme->rate)}, {"encoder", cert.scheme->encoder}};
  }
  return out;
}

}  // namespace bcrate
