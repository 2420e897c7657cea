#include "bcrate/combinatorics.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "bcrate/exact_lp.hpp"

namespace bcrate {

bool is_expanding_sequence(const Instance& inst, std::span<const int> receivers) {
  MessageSet covered;
  for (int j : receivers) {
    if (j < 0 || j >= inst.receiver_count()) return false;
    if (covered.contains(inst.receiver(j).wants)) return false;
    covered |= inst.side(j);
  }
  return true;
}

Rational sequence_weight(const Instance& inst, std::span<const int> receivers) {
  Rational total = 0;
  for (int j : receivers) total += inst.rate(inst.receiver(j).wants);
  return total;
}

namespace {

// Receivers that can matter for an expanding sequence: for each wanted message, only those whose
// S(j) is inclusion-minimal among receivers wanting it (a smaller S never blocks more later).
std::vector<int> useful_receivers(const Instance& inst) {
  std::vector<int> out;
  for (int j = 0; j < inst.receiver_count(); ++j) {
    const MessageSet sj = inst.side(j);
    bool dominated = false;
    for (int i = 0; i < inst.receiver_count() && !dominated; ++i) {
      if (i == j || inst.receiver(i).wants != inst.receiver(j).wants) continue;
      const MessageSet si = inst.side(i);
      // Strictly smaller, or equal with a lower index.
      if (si.subset_of(sj) && (si != sj || i < j)) dominated = true;
    }
    if (!dominated) out.push_back(j);
  }
  return out;
}

}  // namespace

ExpandingSequence alpha_exact(const Instance& inst, std::int64_t state_cap) {
  const std::vector<int> recv = useful_receivers(inst);
  // Integer weights over a common denominator keep the memo small.
  std::vector<Rational> rates = inst.rates();
  const BigInt den = common_denominator(rates);
  std::vector<long long> weight(rates.size());
  for (std::size_t i = 0; i < rates.size(); ++i) {
    const Rational scaled = rates[i] * Rational(den);
    if (!scaled.get_num().fits_slong_p()) throw ResourceCapError("alpha-weights", "rates too fine for alpha_exact");
    weight[i] = scaled.get_num().get_si();
  }
  MessageSet wanted;
  for (const auto& r : inst.receivers()) wanted.insert(r.wants);

  struct Entry {
    long long value;
    int choice;
  };
  std::unordered_map<std::uint64_t, Entry> memo;
  std::function<long long(MessageSet)> best = [&](MessageSet covered) -> long long {
    const std::uint64_t key = (covered & wanted).bits();
    if (auto it = memo.find(key); it != memo.end()) return it->second.value;
    Entry e{0, -1};
    for (int j : recv) {
      const int f = inst.receiver(j).wants;
      if (covered.contains(f)) continue;
      const long long v = weight[static_cast<std::size_t>(f)] + best(covered | inst.side(j));
      if (v > e.value) e = {v, j};
    }
    if (static_cast<std::int64_t>(memo.size()) >= state_cap) {
      throw ResourceCapError("alpha-states", "alpha_exact exceeded " + std::to_string(state_cap) + " memoized states");
    }
    memo.emplace(key, e);
    return e.value;
  };
  best(MessageSet{});

  ExpandingSequence out;
  MessageSet covered;
  for (;;) {
    const int j = memo.at((covered & wanted).bits()).choice;
    if (j < 0) break;
    out.receivers.push_back(j);
    covered |= inst.side(j);
  }
  out.weight = sequence_weight(inst, out.receivers);
  return out;
}

ExpandingSequence alpha_greedy(const Instance& inst) {
  ExpandingSequence out;
  MessageSet covered;
  for (;;) {
    int pick = -1;
    for (int j = 0; j < inst.receiver_count(); ++j) {
      if (covered.contains(inst.receiver(j).wants)) continue;
      if (pick < 0) {
        pick = j;
        continue;
      }
      const Rational rj = inst.rate(inst.receiver(j).wants);
      const Rational rp = inst.rate(inst.receiver(pick).wants);
      if (rj > rp || (rj == rp && (inst.side(j) - covered).size() < (inst.side(pick) - covered).size())) pick = j;
    }
    if (pick < 0) break;
    out.receivers.push_back(pick);
    covered |= inst.side(pick);
  }
  out.weight = sequence_weight(inst, out.receivers);
  return out;
}

bool is_weak_hyperclique(const Instance& inst, std::span<const int> receivers) {
  for (std::size_t a = 0; a < receivers.size(); ++a) {
    for (std::size_t b = 0; b < receivers.size(); ++b) {
      if (a == b) continue;
      const Receiver& ri = inst.receiver(receivers[a]);
      const Receiver& rj = inst.receiver(receivers[b]);
      if (ri.wants != rj.wants && !rj.knows.contains(ri.wants)) return false;
    }
  }
  return true;
}

bool is_strong_hyperclique(const Instance& inst, MessageSet messages) {
  for (int j = 0; j < inst.receiver_count(); ++j) {
    if (messages.contains(inst.receiver(j).wants) && !messages.subset_of(inst.side(j))) return false;
  }
  return true;
}

std::string to_string(CoverKind kind) { return kind == CoverKind::kWeak ? "weak" : "strong"; }

namespace {

using Bits = std::vector<std::uint64_t>;

Bits make_bits(std::size_t n) { return Bits((n + 63) / 64, 0); }
void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }
bool none(const Bits& b) {
  return std::all_of(b.begin(), b.end(), [](std::uint64_t w) { return w == 0; });
}
Bits and_bits(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
  return out;
}
int count(const Bits& b) {
  int c = 0;
  for (auto w : b) c += std::popcount(w);
  return c;
}
std::vector<int> members(const Bits& b) {
  std::vector<int> out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::uint64_t w = b[i]; w != 0; w &= w - 1) out.push_back(static_cast<int>(i * 64) + std::countr_zero(w));
  }
  return out;
}

// Bron-Kerbosch with Tomita pivoting over a compatibility graph.
std::vector<std::vector<int>> maximal_cliques(const std::vector<Bits>& adj, std::size_t cap, const char* what) {
  const std::size_t n = adj.size();
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  std::function<void(Bits, Bits)> expand = [&](Bits p, Bits x) {
    if (none(p) && none(x)) {
      if (out.size() >= cap) throw ResourceCapError("hyperclique-count", std::string(what) + " exceeds " + std::to_string(cap) + " maximal sets");
      std::vector<int> c = current;
      std::sort(c.begin(), c.end());
      out.push_back(std::move(c));
      return;
    }
    int pivot = -1;
    int best = -1;
    for (const Bits* side : {&p, &x}) {
      for (int u : members(*side)) {
        const int c = count(and_bits(p, adj[static_cast<std::size_t>(u)]));
        if (c > best) {
          best = c;
          pivot = u;
        }
      }
    }
    Bits candidates = p;
    for (std::size_t i = 0; i < candidates.size(); ++i) candidates[i] &= ~adj[static_cast<std::size_t>(pivot)][i];
    for (int v : members(candidates)) {
      current.push_back(v);
      expand(and_bits(p, adj[static_cast<std::size_t>(v)]), and_bits(x, adj[static_cast<std::size_t>(v)]));
      current.pop_back();
      p[static_cast<std::size_t>(v) / 64] &= ~(std::uint64_t{1} << (v % 64));
      set_bit(x, static_cast<std::size_t>(v));
    }
  };
  Bits all = make_bits(n);
  for (std::size_t i = 0; i < n; ++i) set_bit(all, i);
  if (n > 0) expand(all, make_bits(n));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Bits> compatibility(const Instance& inst, CoverKind kind) {
  if (kind == CoverKind::kWeak) {
    const std::size_t m = static_cast<std::size_t>(inst.receiver_count());
    std::vector<Bits> adj(m, make_bits(m));
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        const int pair[2] = {static_cast<int>(a), static_cast<int>(b)};
        if (is_weak_hyperclique(inst, pair)) {
          set_bit(adj[a], b);
          set_bit(adj[b], a);
        }
      }
    }
    return adj;
  }
  const std::size_t n = static_cast<std::size_t>(inst.message_count());
  std::vector<Bits> adj(n, make_bits(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (is_strong_hyperclique(inst, MessageSet{static_cast<int>(a), static_cast<int>(b)})) {
        set_bit(adj[a], b);
        set_bit(adj[b], a);
      }
    }
  }
  return adj;
}

MessageSet to_set(const std::vector<int>& elements) {
  MessageSet s;
  for (int e : elements) s.insert(e);
  return s;
}

}  // namespace

std::vector<std::vector<int>> enumerate_maximal_hypercliques(const Instance& inst, CoverKind kind, std::size_t cap) {
  return maximal_cliques(compatibility(inst, kind), cap,
                         kind == CoverKind::kWeak ? "weak hyperclique enumeration" : "strong hyperclique enumeration");
}

std::vector<std::string> check_cover(const Instance& inst, const FractionalCover& cover) {
  std::vector<std::string> problems;
  Rational total = 0;
  for (std::size_t c = 0; c < cover.cliques.size(); ++c) {
    const auto& wc = cover.cliques[c];
    total += wc.weight;
    if (sgn(wc.weight) < 0) problems.push_back("clique " + std::to_string(c) + " has negative weight");
    bool ok = true;
    if (cover.kind == CoverKind::kWeak) {
      for (int j : wc.members) ok = ok && j >= 0 && j < inst.receiver_count();
      ok = ok && is_weak_hyperclique(inst, wc.members);
    } else {
      for (int v : wc.members) ok = ok && v >= 0 && v < inst.message_count();
      ok = ok && is_strong_hyperclique(inst, to_set(wc.members));
    }
    if (!ok) problems.push_back("clique " + std::to_string(c) + " is not a " + to_string(cover.kind) + " hyperclique");
  }
  if (total != cover.total) problems.push_back("total " + to_string(cover.total) + " differs from weight sum " + to_string(total));
  for (int j = 0; j < inst.receiver_count(); ++j) {
    const int f = inst.receiver(j).wants;
    Rational got = 0;
    for (const auto& wc : cover.cliques) {
      const int key = cover.kind == CoverKind::kWeak ? j : f;
      if (std::find(wc.members.begin(), wc.members.end(), key) != wc.members.end()) got += wc.weight;
    }
    if (got < inst.rate(f)) problems.push_back("receiver " + std::to_string(j) + " covered " + to_string(got) + " < " + to_string(inst.rate(f)));
  }
  return problems;
}

FractionalCover fractional_cover(const Instance& inst, CoverKind kind) {
  const auto cliques = enumerate_maximal_hypercliques(inst, kind);
  LpProblem lp(static_cast<int>(cliques.size()), Rational(0));
  std::vector<Term> objective;
  for (int c = 0; c < static_cast<int>(cliques.size()); ++c) objective.push_back({c, Rational(1)});
  lp.set_objective(objective);

  auto add_coverage = [&](int key, const Rational& need) {
    std::vector<Term> terms;
    for (int c = 0; c < static_cast<int>(cliques.size()); ++c) {
      const auto& m = cliques[static_cast<std::size_t>(c)];
      if (std::binary_search(m.begin(), m.end(), key)) terms.push_back({c, Rational(1)});
    }
    lp.add_row(std::move(terms), Relation::kGreaterEqual, need);
  };
  if (kind == CoverKind::kWeak) {
    for (int j = 0; j < inst.receiver_count(); ++j) add_coverage(j, inst.rate(inst.receiver(j).wants));
  } else {
    MessageSet wanted;
    for (const auto& r : inst.receivers()) wanted.insert(r.wants);
    for (int i : wanted.elements()) add_coverage(i, inst.rate(i));
  }

  const LpOptimum opt = solve_min(lp);
  if (opt.status != LpStatus::kOptimal) throw std::logic_error("cover LP is not optimal: " + to_string(opt.status));
  FractionalCover cover;
  cover.kind = kind;
  for (std::size_t c = 0; c < cliques.size(); ++c) {
    if (sgn(opt.assignment[c]) == 0) continue;
    cover.cliques.push_back({cliques[c], opt.assignment[c]});
    cover.total += opt.assignment[c];
  }
  if (const auto problems = check_cover(inst, cover); !problems.empty()) {
    throw std::logic_error("cover LP returned an invalid cover: " + problems.front());
  }
  return cover;
}

CliqueCover integer_clique_cover(const Graph& g, std::int64_t node_budget) {
  const int n = g.vertex_count();
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.degree(a) < g.degree(b); });

  // Greedy start: place each vertex in the first clique it fits.
  std::vector<MessageSet> best;
  for (int v : order) {
    bool placed = false;
    for (auto& c : best) {
      if (c.subset_of(g.neighbors(v))) {
        c.insert(v);
        placed = true;
        break;
      }
    }
    if (!placed) best.push_back(MessageSet{v});
  }

  std::vector<MessageSet> current;
  std::int64_t nodes = 0;
  std::function<void(std::size_t)> search = [&](std::size_t pos) {
    if (++nodes > node_budget) throw ResourceCapError("clique-cover-nodes", "integer_clique_cover exceeded its node budget");
    if (current.size() >= best.size()) return;
    if (pos == order.size()) {
      best = current;
      return;
    }
    const int v = order[pos];
    // Indexed access: the recursion may reallocate `current`.
    for (std::size_t c = 0; c < current.size(); ++c) {
      if (!current[c].subset_of(g.neighbors(v))) continue;
      current[c].insert(v);
      search(pos + 1);
      current[c].erase(v);
    }
    if (current.size() + 1 < best.size()) {
      current.push_back(MessageSet{v});
      search(pos + 1);
      current.pop_back();
    }
  };
  search(0);

  CliqueCover out;
  out.size = static_cast<int>(best.size());
  for (const auto& c : best) out.cliques.push_back(c.elements());
  std::sort(out.cliques.begin(), out.cliques.end());
  return out;
}

std::vector<std::string> check_representation(const Graph& g, const Representation& rep) {
  std::vector<std::string> problems;
  const int n = g.vertex_count();
  if (!is_prime(rep.field)) problems.push_back("field size " + std::to_string(rep.field) + " is not prime");
  if (static_cast<int>(rep.matrix.size()) != n) {
    problems.push_back("matrix has " + std::to_string(rep.matrix.size()) + " rows, expected " + std::to_string(n));
    return problems;
  }
  for (int u = 0; u < n; ++u) {
    const auto& row = rep.matrix[static_cast<std::size_t>(u)];
    if (static_cast<int>(row.size()) != n) {
      problems.push_back("row " + std::to_string(u) + " has the wrong length");
      continue;
    }
    if (rep.field > 1 && field_mod(row[static_cast<std::size_t>(u)], rep.field) == 0) {
      problems.push_back("zero diagonal at " + std::to_string(u));
    }
    for (int v = 0; v < n; ++v) {
      if (v == u || g.has_edge(u, v) || rep.field < 2) continue;
      if (field_mod(row[static_cast<std::size_t>(v)], rep.field) != 0) {
        problems.push_back("nonzero entry at non-edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
      }
    }
  }
  return problems;
}

MinrkResult minrk_bound(const Graph& g, const Representation& rep) {
  if (const auto problems = check_representation(g, rep); !problems.empty()) {
    throw std::invalid_argument("not a representation: " + problems.front());
  }
  MinrkResult out;
  out.representation = rep;
  out.value = rank_mod(rep.matrix, rep.field);
  out.exact = false;
  return out;
}

MinrkResult minrk2_exact(const Graph& g, int max_free_entries) {
  const int n = g.vertex_count();
  if (2 * g.edge_count() > max_free_entries) {
    throw ResourceCapError("minrk-free-entries", "minrk2 exact search needs 2|E| <= " + std::to_string(max_free_entries) +
                                                     ", graph has " + std::to_string(2 * g.edge_count()));
  }
  // Rows as bitmasks; the echelon basis is indexed by leading bit.
  using Basis = std::array<std::uint64_t, 64>;
  int best = n + 1;
  std::vector<std::uint64_t> best_rows;
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);

  auto reduce = [](const Basis& basis, std::uint64_t v) {
    while (v != 0) {
      const int lead = 63 - std::countl_zero(v);
      if (basis[static_cast<std::size_t>(lead)] == 0) break;
      v ^= basis[static_cast<std::size_t>(lead)];
    }
    return v;
  };

  std::function<void(int, const Basis&, int)> search = [&](int u, const Basis& basis, int rank) {
    if (rank >= best) return;
    if (u == n) {
      best = rank;
      best_rows = rows;
      return;
    }
    const std::vector<int> nb = g.neighbors(u).elements();
    const std::uint64_t fixed = std::uint64_t{1} << u;
    const std::uint64_t options = std::uint64_t{1} << nb.size();
    // Two passes: rows already in the span first, then rows that raise the rank.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::uint64_t choice = 0; choice < options; ++choice) {
        std::uint64_t row = fixed;
        for (std::size_t b = 0; b < nb.size(); ++b) {
          if ((choice >> b) & 1U) row |= std::uint64_t{1} << nb[b];
        }
        const std::uint64_t r = reduce(basis, row);
        if ((r == 0) != (pass == 0)) continue;
        rows[static_cast<std::size_t>(u)] = row;
        if (r == 0) {
          search(u + 1, basis, rank);
        } else {
          Basis next = basis;
          next[static_cast<std::size_t>(63 - std::countl_zero(r))] = r;
          search(u + 1, next, rank + 1);
        }
        if (rank >= best || (pass == 1 && rank + 1 >= best)) break;
      }
    }
  };
  search(0, Basis{}, 0);

  MinrkResult out;
  out.value = best;
  out.exact = true;
  out.representation.field = 2;
  out.representation.matrix.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) out.representation.matrix[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = (best_rows[static_cast<std::size_t>(u)] >> v) & 1U;
  }
  return out;
}

int clique_number(const Graph& g) {
  const std::size_t n = static_cast<std::size_t>(g.vertex_count());
  std::vector<Bits> adj(n, make_bits(n));
  for (auto [u, v] : g.edges()) {
    set_bit(adj[static_cast<std::size_t>(u)], static_cast<std::size_t>(v));
    set_bit(adj[static_cast<std::size_t>(v)], static_cast<std::size_t>(u));
  }
  int best = 0;
  for (const auto& c : maximal_cliques(adj, 10'000'000, "clique enumeration")) best = std::max(best, static_cast<int>(c.size()));
  return best;
}

}  // namespace bcrate
