#include "bcrate/hierarchy.hpp"

#include <stdexcept>
#include <unordered_set>

namespace bcrate {

EntropyVector::EntropyVector(int n, Rational fill)
    : n_(n), values_(std::size_t{1} << n, std::move(fill)) {
  if (n < 0 || n > 24) throw std::invalid_argument("entropy vectors limited to 24 messages");
}

int RowCounts::total() const {
  int out = initialize + nonnegativity + slope + monotonicity + decode;
  for (const auto& [order, rows] : submodularity) out += rows;
  return out;
}

namespace {

// Iterates the non-empty submasks of `mask` in decreasing order.
template <typename F>
void for_each_nonempty_submask(std::uint64_t mask, F&& f) {
  for (std::uint64_t sub = mask; sub != 0; sub = (sub - 1) & mask) f(sub);
}

Rational rate_sum(const Instance& inst, MessageSet s) {
  if (!inst.has_rates()) return Rational(s.size());
  Rational out = 0;
  for (int v : s.elements()) out += inst.rate(v);
  return out;
}

class RowSink {
 public:
  explicit RowSink(HierarchyLp& lp) : lp_(lp) {}

  /// Adds Σ coef·X(set) rel rhs after mapping sets to orbit variables. Returns false for duplicates.
  bool add(const std::vector<std::pair<MessageSet, int>>& terms, Relation rel, const Rational& rhs) {
    std::vector<Term> mapped;
    mapped.reserve(terms.size());
    for (const auto& [set, coef] : terms) {
      mapped.push_back({lp_.variable_of[static_cast<std::size_t>(set.bits())], Rational(coef)});
    }
    mapped = normalize_terms(std::move(mapped));
    if (mapped.empty()) {
      const bool holds = rel == Relation::kGreaterEqual ? sgn(rhs) <= 0
                         : rel == Relation::kLessEqual  ? sgn(rhs) >= 0
                                                        : sgn(rhs) == 0;
      if (!holds) throw std::logic_error("hierarchy row collapsed to a contradiction");
      return false;
    }
    key_.clear();
    for (const auto& t : mapped) {
      key_ += std::to_string(t.var);
      key_ += ':';
      key_ += t.coef.get_str();
      key_ += ';';
    }
    key_ += static_cast<char>('0' + static_cast<int>(rel));
    key_ += rhs.get_str();
    if (!seen_.insert(key_).second) return false;
    lp_.problem.add_row(std::move(mapped), rel, rhs);
    return true;
  }

 private:
  HierarchyLp& lp_;
  std::unordered_set<std::string> seen_;
  std::string key_;
};

}  // namespace

HierarchyLp build_hierarchy_lp(const Instance& inst, int k, const HierarchyOptions& options) {
  const int n = inst.message_count();
  if (k < 1 || k > n) throw std::invalid_argument("hierarchy level must lie in [1, n]");
  if (n > 20) {
    throw ResourceCapError("lp-size", "hierarchy LPs are limited to 20 messages");
  }
  const SymmetryGroup group = options.symmetry ? *options.symmetry : SymmetryGroup::trivial(n);
  if (options.symmetry) check_automorphisms(inst, group);
  const SubsetOrbits orbits(group);

  const int ceiling = k <= 2 ? options.max_n_low : options.max_n_high;
  if (!options.override_ceiling && orbits.count() > (1 << std::min(ceiling, 20))) {
    throw ResourceCapError("lp-size", "level " + std::to_string(k) + " LP has " + std::to_string(orbits.count()) +
                                          " variables, above the ceiling of 2^" + std::to_string(ceiling) +
                                          " (use symmetry or override the ceiling)");
  }

  HierarchyLp lp;
  lp.problem = LpProblem(orbits.count(), Rational(0));
  lp.representatives = orbits.representatives();
  lp.variable_of.resize(std::size_t{1} << n);
  for (std::size_t s = 0; s < lp.variable_of.size(); ++s) lp.variable_of[s] = orbits.orbit_of(MessageSet(s));
  lp.problem.set_objective({{lp.variable_of[0], Rational(1)}});

  RowSink sink(lp);
  const MessageSet all = inst.all();
  RowCounts& counts = lp.counts;
  counts.initialize += sink.add({{all, 1}}, Relation::kGreaterEqual, inst.total_rate());
  counts.nonnegativity += sink.add({{MessageSet(), 1}}, Relation::kGreaterEqual, Rational(0));

  for (const MessageSet s : orbits.representatives()) {
    const MessageSet outside = all - s;
    if (options.reduced) {
      for (int v : outside.elements()) {
        const MessageSet t = s | MessageSet::singleton(v);
        counts.slope += sink.add({{s, 1}, {t, -1}}, Relation::kGreaterEqual, -inst.rate(v));
        counts.monotonicity += sink.add({{t, 1}, {s, -1}}, Relation::kGreaterEqual, Rational(0));
      }
      const MessageSet b = closure_step(inst, s);
      if (b != s) counts.decode += sink.add({{s, 1}, {b, -1}}, Relation::kGreaterEqual, Rational(0));
    } else {
      for_each_nonempty_submask(outside.bits(), [&](std::uint64_t add) {
        const MessageSet t = s | MessageSet(add);
        counts.slope += sink.add({{s, 1}, {t, -1}}, Relation::kGreaterEqual, -rate_sum(inst, MessageSet(add)));
        counts.monotonicity += sink.add({{t, 1}, {s, -1}}, Relation::kGreaterEqual, Rational(0));
      });
      const MessageSet c = closure_step(inst, s);
      for_each_nonempty_submask((c - s).bits(), [&](std::uint64_t add) {
        counts.decode += sink.add({{s, 1}, {s | MessageSet(add), -1}}, Relation::kGreaterEqual, Rational(0));
      });
    }

    // Submodularity rows with R ∪ Z = s.
    if (k >= 2) {
      std::vector<std::pair<MessageSet, int>> terms;
      for_each_nonempty_submask(s.bits(), [&](std::uint64_t rbits) {
        const MessageSet r(rbits);
        const int order = r.size();
        if (order < 2 || order > k) return;
        const MessageSet z = s - r;
        terms.clear();
        terms.emplace_back(z, (order % 2 == 0) ? 1 : -1);
        for_each_nonempty_submask(rbits, [&](std::uint64_t t) {
          const int sign = ((order - std::popcount(t)) % 2 == 0) ? 1 : -1;
          terms.emplace_back(z | MessageSet(t), sign);
        });
        counts.submodularity[order] += sink.add(terms, Relation::kLessEqual, Rational(0));
      });
    }
  }
  return lp;
}

HierarchyBound solve_bk(const Instance& inst, int k, const HierarchyOptions& options) {
  const HierarchyLp lp = build_hierarchy_lp(inst, k, options);
  const LpOptimum opt = solve_min(lp.problem);
  if (opt.status != LpStatus::kOptimal) {
    throw std::logic_error("hierarchy LP is " + to_string(opt.status));
  }
  HierarchyBound out;
  out.level = k;
  out.value = opt.value;
  out.counts = lp.counts;
  out.variables = lp.problem.num_vars();
  out.rows = static_cast<int>(lp.problem.rows().size());
  out.iterations = opt.iterations;
  out.route = opt.route;
  out.solution = EntropyVector(inst.message_count());
  for (std::size_t s = 0; s < lp.variable_of.size(); ++s) {
    out.solution[MessageSet(s)] = opt.assignment[static_cast<std::size_t>(lp.variable_of[s])];
  }
  return out;
}

bool verify_hierarchy_membership(const EntropyVector& x, const Instance& inst, int k) {
  const int n = inst.message_count();
  if (x.message_count() != n) return false;
  const MessageSet all = inst.all();
  if (x[all] < inst.total_rate()) return false;
  if (sgn(x[MessageSet()]) < 0) return false;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t sb = 0; sb < total; ++sb) {
    const MessageSet s(sb);
    const MessageSet outside = all - s;
    bool ok = true;
    for_each_nonempty_submask(outside.bits(), [&](std::uint64_t add) {
      const MessageSet t = s | MessageSet(add);
      if (x[s] + rate_sum(inst, MessageSet(add)) < x[t]) ok = false;
      if (x[t] < x[s]) ok = false;
    });
    const MessageSet c = closure_step(inst, s);
    for_each_nonempty_submask((c - s).bits(), [&](std::uint64_t add) {
      if (x[s] < x[s | MessageSet(add)]) ok = false;
    });
    if (!ok) return false;
    // Submodularity with R ∪ Z = s.
    for_each_nonempty_submask(sb, [&](std::uint64_t rbits) {
      const int order = std::popcount(rbits);
      if (order < 2 || order > k) return;
      const MessageSet z = s - MessageSet(rbits);
      Rational sum = (order % 2 == 0) ? x[z] : -x[z];
      for_each_nonempty_submask(rbits, [&](std::uint64_t t) {
        if ((order - std::popcount(t)) % 2 == 0) sum += x[z | MessageSet(t)];
        else sum -= x[z | MessageSet(t)];
      });
      if (sgn(sum) > 0) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

bool satisfies_slope_and_submodularity(const EntropyVector& x) {
  const std::uint64_t total = std::uint64_t{1} << x.message_count();
  for (std::uint64_t s = 0; s < total; ++s) {
    bool ok = true;
    for_each_nonempty_submask(s, [&](std::uint64_t rbits) {
      const int order = std::popcount(rbits);
      const MessageSet z = MessageSet(s) - MessageSet(rbits);
      Rational sum = (order % 2 == 0) ? x[z] : -x[z];
      for_each_nonempty_submask(rbits, [&](std::uint64_t t) {
        if ((order - std::popcount(t)) % 2 == 0) sum += x[z | MessageSet(t)];
        else sum -= x[z | MessageSet(t)];
      });
      if (sum > (order == 1 ? 1 : 0)) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

CoverageResult decompose_coverage(const EntropyVector& x) {
  const int n = x.message_count();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  auto f = [&](std::uint64_t s) {
    const MessageSet rest(full & ~s);
    return x[rest] - rest.size();
  };
  CoverageResult out;
  out.weights.assign(std::size_t{1} << n, Rational(0));
  for (std::uint64_t t = 1; t <= full; ++t) {
    const std::uint64_t base = full & ~t;
    Rational sum = f(base);
    for_each_nonempty_submask(t, [&](std::uint64_t u) {
      if (std::popcount(u) % 2 == 0) sum += f(base | u);
      else sum -= f(base | u);
    });
    out.weights[t] = -sum;
  }
  if (x[MessageSet(full)] != n) {
    out.witness = "initialize not tight: X(V) = " + to_string(x[MessageSet(full)]) + " != " + std::to_string(n);
    return out;
  }
  for (std::uint64_t t = 1; t <= full; ++t) {
    if (sgn(out.weights[t]) < 0) {
      out.violated = MessageSet(t);
      out.witness = "almost-coverage inequality violated for R = " + to_string(MessageSet(t)) +
                    " (w = " + to_string(out.weights[t]) + ")";
      return out;
    }
  }
  out.ok = true;
  return out;
}

EntropyVector coverage_vector(int n, const WeightVector& w) {
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  if (w.size() != full + 1) throw std::invalid_argument("weight vector has wrong length");
  Rational total = 0;
  for (std::uint64_t t = 1; t <= full; ++t) total += w[t];
  EntropyVector x(n);
  for (std::uint64_t s = 0; s <= full; ++s) {
    Rational inside = 0;
    for_each_nonempty_submask(s, [&](std::uint64_t t) { inside += w[t]; });
    x[MessageSet(s)] = Rational(std::popcount(s)) + total - inside;
  }
  return x;
}

EntropyVector alpha_feasible_vector(const Graph& g) {
  const int n = g.vertex_count();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  // best[U] = independence number of G[U], by removing the lowest vertex or taking it.
  std::vector<int> best(full + 1, 0);
  for (std::uint64_t u = 1; u <= full; ++u) {
    const int v = std::countr_zero(u);
    const std::uint64_t without = u & (u - 1);
    best[u] = std::max(best[without], 1 + best[without & ~g.neighbors(v).bits()]);
  }
  EntropyVector x(n);
  for (std::uint64_t s = 0; s <= full; ++s) x[MessageSet(s)] = std::popcount(s) + best[full & ~s];
  return x;
}

}  // namespace bcrate
