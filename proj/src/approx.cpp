#include "bcrate/approx.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace bcrate {

std::string to_string(SamplingMode mode) { return mode == SamplingMode::kExact ? "exact" : "monte-carlo"; }

namespace {

BigInt factorial(int n) {
  BigInt out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

// Receivers j with f(j) ∈ t ⊆ S(j).
std::vector<int> sampled_clique(const Instance& inst, MessageSet t) {
  std::vector<int> out;
  for (int j = 0; j < inst.receiver_count(); ++j) {
    if (t.contains(inst.receiver(j).wants) && t.subset_of(inst.side(j))) out.push_back(j);
  }
  return out;
}

bool unit_coverage_holds(const Instance& inst, const FractionalCover& cover) {
  std::vector<Rational> got(static_cast<std::size_t>(inst.receiver_count()), 0);
  for (const auto& c : cover.cliques) {
    for (int j : c.members) got[static_cast<std::size_t>(j)] += c.weight;
  }
  return std::all_of(got.begin(), got.end(), [](const Rational& g) { return g >= 1; });
}

FractionalCover from_weights(const std::map<std::vector<int>, Rational>& weights) {
  FractionalCover cover;
  cover.kind = CoverKind::kWeak;
  for (const auto& [members, w] : weights) {
    if (sgn(w) == 0) continue;
    cover.cliques.push_back({members, w});
    cover.total += w;
  }
  return cover;
}

}  // namespace

LowDegreeCover low_degree_cover(const Instance& inst, int d, const ApproxOptions& options) {
  const int n = inst.message_count();
  if (d < 0) throw std::invalid_argument("low_degree_cover needs d >= 0");
  for (int j = 0; j < inst.receiver_count(); ++j) {
    if (inst.side(j).size() + d < n) {
      throw std::invalid_argument("receiver " + std::to_string(j) + " has |S(j)| + d = " +
                                  std::to_string(inst.side(j).size() + d) + " < n = " + std::to_string(n));
    }
  }
  LowDegreeCover out;
  out.d = d;
  const Rational scale = 4 * d + 2;
  std::map<std::vector<int>, Rational> weights;

  if (d == 0) {
    // Every S(j) = V, so the prefix is always all of V.
    const auto members = sampled_clique(inst, inst.all());
    if (!members.empty()) weights[members] = scale;
    out.cover = from_weights(weights);
    out.bound = scale;
    return out;
  }

  if (n <= options.exact_limit && !options.force_monte_carlo) {
    // P(T) = |T|! · d · (n+d-|T|-1)! / (n+d)!: the first |T| entries are T and the next is a dummy.
    std::vector<Rational> prob(static_cast<std::size_t>(n) + 1);
    const BigInt total = factorial(n + d);
    for (int t = 0; t <= n; ++t) prob[static_cast<std::size_t>(t)] = make_rational(factorial(t) * d * factorial(n + d - t - 1), total);
    std::map<std::vector<int>, std::vector<long long>> by_size;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      const MessageSet t(bits);
      auto members = sampled_clique(inst, t);
      if (members.empty()) continue;
      auto& counts = by_size[members];
      counts.resize(static_cast<std::size_t>(n) + 1, 0);
      ++counts[static_cast<std::size_t>(t.size())];
    }
    for (const auto& [members, counts] : by_size) {
      Rational p = 0;
      for (std::size_t t = 0; t < counts.size(); ++t) p += Rational(static_cast<long>(counts[t])) * prob[t];
      weights[members] = scale * p;
    }
    out.mode = SamplingMode::kExact;
    out.bound = scale;
  } else {
    out.mode = SamplingMode::kMonteCarlo;
    out.bound = scale * make_rational(11, 10);
    std::mt19937_64 rng(options.seed);
    std::vector<int> perm(static_cast<std::size_t>(n + d));
    for (std::int64_t samples = options.samples; samples <= options.samples * 16; samples *= 2) {
      std::map<std::vector<int>, long long> counts;
      for (std::int64_t s = 0; s < samples; ++s) {
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        MessageSet t;
        for (int v : perm) {
          if (v >= n) break;
          t.insert(v);
        }
        auto members = sampled_clique(inst, t);
        if (!members.empty()) ++counts[members];
      }
      weights.clear();
      for (const auto& [members, c] : counts) weights[members] = out.bound * make_rational(static_cast<long>(c), static_cast<long>(samples));
      out.samples = samples;
      FractionalCover candidate = from_weights(weights);
      if (unit_coverage_holds(inst, candidate) && candidate.total <= out.bound) {
        out.cover = std::move(candidate);
        return out;
      }
    }
    throw std::runtime_error("low_degree_cover: sampled weights failed coverage after repeated resampling");
  }
  out.cover = from_weights(weights);
  if (!unit_coverage_holds(inst, out.cover)) throw std::logic_error("low_degree_cover: exact weights fail coverage");
  return out;
}

namespace {

Rational cover_bound(int n, int k) {
  if (n <= 1) return 6 * k;
  return 6 * k * enclose_power(n, k - 1, k).upper;
}

// a <= n^((k-1)/k), decided exactly as a^k <= n^(k-1).
bool within_threshold(int a, int n, int k) {
  if (a <= 0) return true;
  BigInt lhs, rhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(k));
  mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k - 1));
  return lhs <= rhs;
}

struct Search {
  const ApproxOptions& options;
  bool sampled = false;

  // Receiver indices in results refer to `inst`.
  struct Result {
    std::optional<std::vector<int>> sequence;
    std::vector<WeightedClique> cliques;
  };

  static void append(std::vector<WeightedClique>& out, const std::vector<WeightedClique>& part, const std::vector<int>& map) {
    for (const auto& c : part) {
      WeightedClique mapped{{}, c.weight};
      for (int j : c.members) mapped.members.push_back(map[static_cast<std::size_t>(j)]);
      std::sort(mapped.members.begin(), mapped.members.end());
      out.push_back(std::move(mapped));
    }
  }

  Result run(const Instance& inst, int k) {
    Result res;
    const int m = inst.receiver_count();
    if (m == 0) return res;
    if (k == 1) {
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          if (a != b && !inst.side(a).contains(inst.receiver(b).wants)) {
            res.sequence = std::vector<int>{a, b};
            return res;
          }
        }
      }
      std::vector<int> all(static_cast<std::size_t>(m));
      std::iota(all.begin(), all.end(), 0);
      res.cliques.push_back({all, Rational(1)});
      return res;
    }

    const int n = inst.message_count();
    std::vector<int> to_top(static_cast<std::size_t>(m));
    std::iota(to_top.begin(), to_top.end(), 0);
    Instance current = inst;
    for (;;) {
      const int cm = current.receiver_count();
      if (cm == 0) return res;
      // Receiver with the largest D(j) = {f(j)} ∪ T(j); lowest index on ties.
      int j1 = 0;
      for (int j = 1; j < cm; ++j) {
        if (current.unknown(j).size() > current.unknown(j1).size()) j1 = j;
      }
      const int max_d = current.unknown(j1).size();  // |D(j1)| - 1
      if (within_threshold(max_d, n, k)) {
        const LowDegreeCover low = low_degree_cover(current, max_d, options);
        sampled = sampled || low.mode == SamplingMode::kMonteCarlo;
        append(res.cliques, low.cover.cliques, to_top);
        return res;
      }
      const MessageSet s1 = current.side(j1);
      const InducedInstance g1 = induced(current, current.all() - s1);
      Result inner = run(g1.instance, k - 1);
      std::vector<int> g1_to_top;
      for (int j : g1.receivers) g1_to_top.push_back(to_top[static_cast<std::size_t>(j)]);
      if (inner.sequence) {
        std::vector<int> seq{to_top[static_cast<std::size_t>(j1)]};
        for (int j : *inner.sequence) seq.push_back(g1_to_top[static_cast<std::size_t>(j)]);
        res.sequence = std::move(seq);
        return res;
      }
      append(res.cliques, inner.cliques, g1_to_top);
      const InducedInstance g2 = induced(current, s1);
      std::vector<int> next_to_top;
      for (int j : g2.receivers) next_to_top.push_back(to_top[static_cast<std::size_t>(j)]);
      current = g2.instance;
      to_top = std::move(next_to_top);
    }
  }
};

}  // namespace

ApproxOutcome find_expanding_or_cover(const Instance& inst, int k, const ApproxOptions& options) {
  if (k < 1) throw std::invalid_argument("find_expanding_or_cover needs k >= 1");
  const Instance plain = inst.unweighted();
  Search search{options};
  auto res = search.run(plain, k);
  ApproxOutcome out;
  out.k = k;
  out.bound = cover_bound(inst.message_count(), k);
  out.mode = search.sampled ? SamplingMode::kMonteCarlo : SamplingMode::kExact;
  if (res.sequence) {
    out.sequence = ExpandingSequence{*res.sequence, sequence_weight(plain, *res.sequence)};
  } else {
    // Merge equal member lists so the cover is canonical.
    std::map<std::vector<int>, Rational> merged;
    for (auto& c : res.cliques) merged[c.members] += c.weight;
    out.cover = from_weights(merged);
  }
  return out;
}

std::vector<std::string> check_outcome(const Instance& inst, const ApproxOutcome& outcome) {
  std::vector<std::string> problems;
  if (outcome.sequence.has_value() == outcome.cover.has_value()) problems.push_back("outcome must hold exactly one of sequence and cover");
  if (outcome.sequence) {
    if (static_cast<int>(outcome.sequence->receivers.size()) != outcome.k + 1) problems.push_back("sequence size is not k+1");
    if (!is_expanding_sequence(inst, outcome.sequence->receivers)) problems.push_back("sequence is not expanding");
  }
  if (outcome.cover) {
    for (auto& p : check_cover(inst.unweighted(), *outcome.cover)) problems.push_back(p);
    if (outcome.cover->total > outcome.bound) problems.push_back("cover weight " + to_string(outcome.cover->total) + " exceeds " + to_string(outcome.bound));
  }
  if (outcome.bound < cover_bound(inst.message_count(), outcome.k)) problems.push_back("bound is not the certified 6k n^(1-1/k) enclosure");
  return problems;
}

TauCertificate tau(const Instance& original, const ApproxOptions& options) {
  // Rates already in (0, 1] are used as given so the dyadic classes keep their meaning.
  Rational max_rate = 0;
  for (const auto& r : original.rates()) max_rate = std::max(max_rate, r);
  const Instance inst = max_rate > 1 ? original.normalized() : original;
  const int n = inst.message_count();
  TauCertificate cert;
  cert.rate_scale = max_rate > 1 ? max_rate : Rational(1);
  cert.seed = options.seed;
  cert.cover.kind = CoverKind::kWeak;

  auto scale_cover = [&](FractionalCover c) {
    for (auto& wc : c.cliques) wc.weight *= cert.rate_scale;
    c.total *= cert.rate_scale;
    return c;
  };

  if (n < 4) {
    // log log n is degenerate here; the exact weak cover is at most Σ r_i, so it is the minimum.
    cert.small_n_fallback = true;
    cert.cover = scale_cover(fractional_cover(inst, CoverKind::kWeak));
    cert.tau = cert.cover.total;
    return cert;
  }

  // k beyond ceil(log2 n) + 2 never beats the trivial term.
  int log_ceil = 0;
  while ((1 << log_ceil) < n) ++log_ceil;
  cert.k_cap = log_ceil + 2;

  // Dyadic classes: 2^-s < r_i <= 2^(1-s).
  std::map<int, std::vector<int>> classes;
  for (int i = 0; i < n; ++i) {
    int s = 1;
    while (inst.rate(i) <= inverse_power_of_two(s)) ++s;
    classes[s].push_back(i);
  }

  bool sampled = false;
  for (const auto& [s, messages] : classes) {
    TauClass tc;
    tc.s = s;
    tc.messages = messages;
    MessageSet keep;
    for (int i : messages) keep.insert(i);
    const InducedInstance sub = induced(inst, keep);
    const Rational pow_s = inverse_power_of_two(s);
    tc.trivial_term = pow_s * 2 * static_cast<long>(messages.size());

    std::optional<FractionalCover> class_cover;
    for (int k = 1; k <= cert.k_cap; ++k) {
      const ApproxOutcome out = find_expanding_or_cover(sub.instance, k, options);
      sampled = sampled || out.mode == SamplingMode::kMonteCarlo;
      if (out.sequence) {
        tc.sequence.clear();
        for (int j : out.sequence->receivers) tc.sequence.push_back(sub.receivers[static_cast<std::size_t>(j)]);
        continue;
      }
      tc.k = k;
      // The class cover is over the unweighted class; scaled by 2^(1-s) it covers every rate in it.
      tc.cover_term = pow_s * 12 * k * (n <= 1 ? Rational(1) : enclose_power(n, k - 1, k).upper);
      class_cover = *out.cover;
      break;
    }
    tc.capped = tc.k == 0;

    if (tc.cover_term && *tc.cover_term <= tc.trivial_term) {
      tc.term = *tc.cover_term;
      for (const auto& c : class_cover->cliques) {
        WeightedClique mapped{{}, c.weight * 2 * pow_s};
        for (int j : c.members) mapped.members.push_back(sub.receivers[static_cast<std::size_t>(j)]);
        cert.cover.cliques.push_back(std::move(mapped));
      }
    } else {
      tc.term = tc.trivial_term;
      for (int i : messages) {
        std::vector<int> members;
        for (int j = 0; j < inst.receiver_count(); ++j) {
          if (inst.receiver(j).wants == i) members.push_back(j);
        }
        if (!members.empty()) cert.cover.cliques.push_back({members, inst.rate(i)});
      }
    }
    cert.tau += tc.term;
    cert.classes.push_back(std::move(tc));
  }
  for (const auto& c : cert.cover.cliques) cert.cover.total += c.weight;
  cert.cover = scale_cover(std::move(cert.cover));
  cert.tau *= cert.rate_scale;
  cert.mode = sampled ? SamplingMode::kMonteCarlo : SamplingMode::kExact;

  // n (2 log log n + 24) / log n with base-2 logs.
  const Enclosure log_n = enclose_log2(Rational(n));
  const Enclosure loglog_lo = enclose_log2(std::max(log_n.lower, Rational(1)));
  const Enclosure loglog_hi = enclose_log2(std::max(log_n.upper, Rational(1)));
  cert.ratio_bound = Enclosure{n * (2 * loglog_lo.lower + 24) / log_n.upper, n * (2 * loglog_hi.upper + 24) / log_n.lower};
  return cert;
}

std::vector<std::string> check_tau(const Instance& inst, const TauCertificate& cert) {
  std::vector<std::string> problems;
  for (auto& p : check_cover(inst, cert.cover)) problems.push_back("cover: " + p);
  if (cert.cover.total > cert.tau) problems.push_back("cover weight exceeds tau");
  if (!cert.small_n_fallback) {
    Rational sum = 0;
    for (const auto& c : cert.classes) {
      sum += c.term;
      const Rational expected = c.cover_term ? std::min(*c.cover_term, c.trivial_term) : c.trivial_term;
      if (c.term != expected) problems.push_back("class " + std::to_string(c.s) + " term is not the smaller option");
      if (c.trivial_term != inverse_power_of_two(c.s) * 2 * static_cast<long>(c.messages.size())) {
        problems.push_back("class " + std::to_string(c.s) + " trivial term is wrong");
      }
    }
    if (sum * cert.rate_scale != cert.tau) problems.push_back("tau differs from the sum of class terms");
  }
  if (cert.tau > inst.message_count() * cert.rate_scale) problems.push_back("tau exceeds n");
  return problems;
}

ApproxBeta approximate_beta(const Instance& inst, const ApproxOptions& options) {
  ApproxBeta out;
  out.certificate = tau(inst, options);
  out.upper = out.certificate.tau;
  out.lower_witness = alpha_greedy(inst);
  for (const auto& c : out.certificate.classes) {
    const Rational w = sequence_weight(inst, c.sequence);
    if (w > out.lower_witness.weight) out.lower_witness = ExpandingSequence{c.sequence, w};
  }
  out.lower = out.lower_witness.weight;
  return out;
}

}  // namespace bcrate
