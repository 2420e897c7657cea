#include "bcrate/codes.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

#include "bcrate/errors.hpp"

namespace bcrate {

namespace {

void require_unit_rates(const Instance& inst, const char* what) {
  for (const auto& r : inst.rates()) {
    if (r != 1) throw std::invalid_argument(std::string(what) + " needs unit rates");
  }
}

BigInt weight_denominator(const FractionalCover& cover) {
  std::vector<Rational> weights;
  for (const auto& c : cover.cliques) weights.push_back(c.weight);
  return weights.empty() ? BigInt(1) : common_denominator(weights);
}

int small_int(const BigInt& v, const char* what) {
  if (!v.fits_sint_p() || v > 1'000'000) throw std::invalid_argument(std::string(what) + " is too large");
  return static_cast<int>(v.get_si());
}

}  // namespace

void attach_decoders(const Instance& inst, CodeScheme& scheme) {
  const int d = scheme.symbols_per_message;
  const int width = scheme.message_count * d;
  const int p = scheme.field;
  scheme.decoders.clear();
  for (int j = 0; j < inst.receiver_count(); ++j) {
    LinearDecoder dec;
    dec.receiver = j;
    dec.known = inst.receiver(j).knows.elements();
    FieldMatrix rows = scheme.encoder;
    for (int v : dec.known) {
      for (int t = 0; t < d; ++t) {
        std::vector<int> unit(static_cast<std::size_t>(width), 0);
        unit[static_cast<std::size_t>(v * d + t)] = 1;
        rows.push_back(std::move(unit));
      }
    }
    const int f = inst.receiver(j).wants;
    for (int t = 0; t < d; ++t) {
      std::vector<int> target(static_cast<std::size_t>(width), 0);
      target[static_cast<std::size_t>(f * d + t)] = 1;
      auto coef = express_in_rows(rows, target, p);
      if (!coef) {
        dec.complete = false;
        coef = std::vector<int>(rows.size(), 0);
      }
      dec.matrix.push_back(std::move(*coef));
    }
    scheme.decoders.push_back(std::move(dec));
  }
}

std::vector<std::string> check_scheme(const Instance& inst, const CodeScheme& scheme) {
  std::vector<std::string> problems;
  const int d = scheme.symbols_per_message;
  if (!is_prime(scheme.field)) problems.push_back("field size is not prime");
  if (scheme.message_count != inst.message_count()) problems.push_back("message count differs from the instance");
  if (d < 1) problems.push_back("symbols per message must be positive");
  for (const auto& row : scheme.encoder) {
    if (static_cast<int>(row.size()) != scheme.message_count * d) {
      problems.push_back("encoder row has the wrong width");
      break;
    }
  }
  if (d >= 1 && scheme.rate != make_rational(scheme.broadcast_symbols(), d)) problems.push_back("rate is not broadcast symbols / symbols per message");
  if (static_cast<int>(scheme.decoders.size()) != inst.receiver_count()) problems.push_back("one decoder per receiver expected");
  for (const auto& dec : scheme.decoders) {
    const std::size_t cols = static_cast<std::size_t>(scheme.broadcast_symbols()) + dec.known.size() * static_cast<std::size_t>(d);
    bool ok = static_cast<int>(dec.matrix.size()) == d;
    for (const auto& row : dec.matrix) ok = ok && row.size() == cols;
    if (!ok) problems.push_back("decoder " + std::to_string(dec.receiver) + " has the wrong shape");
    if (dec.receiver >= 0 && dec.receiver < inst.receiver_count()) {
      for (int v : dec.known) {
        if (!inst.receiver(dec.receiver).knows.contains(v)) problems.push_back("decoder " + std::to_string(dec.receiver) + " reads an unknown message");
      }
    }
  }
  return problems;
}

CodeScheme linear_code(const Instance& inst, std::string name, int field, int symbols_per_message, FieldMatrix encoder) {
  if (!is_prime(field)) throw std::invalid_argument("field size must be prime");
  if (symbols_per_message < 1) throw std::invalid_argument("symbols per message must be positive");
  CodeScheme s;
  s.name = std::move(name);
  s.field = field;
  s.message_count = inst.message_count();
  s.symbols_per_message = symbols_per_message;
  for (auto& row : encoder) {
    if (static_cast<int>(row.size()) != s.message_count * symbols_per_message) throw std::invalid_argument("encoder row has the wrong width");
    for (auto& v : row) v = field_mod(v, field);
  }
  s.encoder = std::move(encoder);
  s.rate = make_rational(s.broadcast_symbols(), symbols_per_message);
  attach_decoders(inst, s);
  return s;
}

CodeScheme clique_cover_code(const Graph& g, const std::vector<std::vector<int>>& cliques) {
  const int n = g.vertex_count();
  MessageSet covered;
  CodeScheme s;
  s.name = "cliquecover";
  s.field = 2;
  s.message_count = n;
  for (const auto& c : cliques) {
    std::vector<int> row(static_cast<std::size_t>(n), 0);
    for (int v : c) {
      if (v < 0 || v >= n) throw std::invalid_argument("clique member out of range");
      for (int w : c) {
        if (v != w && !g.has_edge(v, w)) throw std::invalid_argument("set is not a clique");
      }
      row[static_cast<std::size_t>(v)] = 1;
      covered.insert(v);
    }
    s.encoder.push_back(std::move(row));
  }
  if (covered != g.all()) throw std::invalid_argument("cliques do not cover every vertex");
  s.rate = static_cast<long>(cliques.size());
  attach_decoders(from_graph(g), s);
  return s;
}

CodeScheme strong_cover_code(const Instance& inst, const FractionalCover& cover) {
  require_unit_rates(inst, "strong_cover_code");
  if (cover.kind != CoverKind::kStrong) throw std::invalid_argument("strong_cover_code needs a strong cover");
  if (const auto problems = check_cover(inst, cover); !problems.empty()) throw std::invalid_argument("invalid cover: " + problems.front());
  const int n = inst.message_count();
  const int q = small_int(weight_denominator(cover), "cover denominator");

  // y_S·q unit copies of every set, in cover order.
  std::vector<MessageSet> sets;
  for (const auto& c : cover.cliques) {
    const Rational copies = c.weight * q;
    MessageSet s;
    for (int v : c.members) s.insert(v);
    for (int k = 0; k < small_int(copies.get_num(), "copy count"); ++k) sets.push_back(s);
  }
  MessageSet wanted;
  for (const auto& r : inst.receivers()) wanted.insert(r.wants);
  // Shrink so every wanted message lies in exactly q sets (highest index first, latest copies first);
  // strong hypercliques are closed under subsets, so the sets stay valid.
  for (int x = n - 1; x >= 0; --x) {
    int count = 0;
    for (const auto& s : sets) count += s.contains(x) ? 1 : 0;
    const int target = wanted.contains(x) ? q : 0;
    for (auto it = sets.rbegin(); it != sets.rend() && count > target; ++it) {
      if (!it->contains(x)) continue;
      it->erase(x);
      --count;
    }
  }

  CodeScheme s;
  s.name = "strongcover";
  s.field = 2;
  s.message_count = n;
  s.symbols_per_message = q;
  s.encoder.assign(sets.size(), std::vector<int>(static_cast<std::size_t>(n * q), 0));
  // Bit k of message x goes into the k-th set containing x.
  std::vector<int> next_bit(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (int x : sets[i].elements()) {
      const int k = next_bit[static_cast<std::size_t>(x)]++;
      s.encoder[i][static_cast<std::size_t>(x * q + k)] = 1;
    }
  }
  s.rate = make_rational(static_cast<long>(sets.size()), q);
  attach_decoders(inst, s);
  return s;
}

CodeScheme mds_weak_cover_code(const Instance& inst, const FractionalCover& cover) {
  require_unit_rates(inst, "mds_weak_cover_code");
  if (cover.kind != CoverKind::kWeak) throw std::invalid_argument("mds_weak_cover_code needs a weak cover");
  if (const auto problems = check_cover(inst, cover); !problems.empty()) throw std::invalid_argument("invalid cover: " + problems.front());
  const int n = inst.message_count();
  const int d = small_int(weight_denominator(cover), "cover denominator");

  std::vector<MessageSet> copies;  // f(J) per copy
  for (const auto& c : cover.cliques) {
    MessageSet fj;
    for (int j : c.members) fj.insert(inst.receiver(j).wants);
    const Rational count = c.weight * d;
    for (int k = 0; k < small_int(count.get_num(), "copy count"); ++k) copies.push_back(fj);
  }
  const int total = static_cast<int>(copies.size());
  CodeScheme s;
  s.name = "mds";
  s.field = next_prime_above(total);
  s.message_count = n;
  s.symbols_per_message = d;
  s.encoder.assign(copies.size(), std::vector<int>(static_cast<std::size_t>(n * d), 0));
  for (int c = 0; c < total; ++c) {
    // Distinct evaluation points 1..dw make any d of the dual vectors (1, a, ..., a^(d-1)) a basis.
    const int a = c + 1;
    for (int i : copies[static_cast<std::size_t>(c)].elements()) {
      long long power = 1;
      for (int t = 0; t < d; ++t) {
        s.encoder[static_cast<std::size_t>(c)][static_cast<std::size_t>(i * d + t)] = static_cast<int>(power);
        power = power * a % s.field;
      }
    }
  }
  s.rate = make_rational(total, d);
  attach_decoders(inst, s);
  return s;
}

CodeScheme minrk_code(const Graph& g, const Representation& rep) {
  if (const auto problems = check_representation(g, rep); !problems.empty()) throw std::invalid_argument("not a representation: " + problems.front());
  CodeScheme s;
  s.name = "minrk";
  s.field = rep.field;
  s.message_count = g.vertex_count();
  for (int r : basis_rows(rep.matrix, rep.field)) {
    std::vector<int> row = rep.matrix[static_cast<std::size_t>(r)];
    for (auto& v : row) v = field_mod(v, rep.field);
    s.encoder.push_back(std::move(row));
  }
  s.rate = s.broadcast_symbols();
  attach_decoders(from_graph(g), s);
  return s;
}

std::string to_string(VerifyMode mode) {
  switch (mode) {
    case VerifyMode::kAuto: return "auto";
    case VerifyMode::kExhaustive: return "exhaustive";
    case VerifyMode::kRandomized: return "randomized";
  }
  return "unknown";
}

namespace {

class Checker {
 public:
  Checker(const Instance& inst, const CodeScheme& s) : inst_(inst), s_(s) {}

  // Returns the receivers whose decoders disagree with their wanted symbols on x, given y = Ex.
  void check(const std::vector<int>& x, const std::vector<int>& y, VerificationReport& report) const {
    const int d = s_.symbols_per_message;
    const int p = s_.field;
    const std::size_t b = y.size();
    for (const auto& dec : s_.decoders) {
      const int f = inst_.receiver(dec.receiver).wants;
      bool ok = true;
      for (int t = 0; t < d && ok; ++t) {
        const auto& row = dec.matrix[static_cast<std::size_t>(t)];
        long long acc = 0;
        for (std::size_t k = 0; k < b; ++k) acc += static_cast<long long>(row[k]) * y[k];
        std::size_t col = b;
        for (int v : dec.known) {
          for (int u = 0; u < d; ++u) acc += static_cast<long long>(row[col++]) * x[static_cast<std::size_t>(v * d + u)];
        }
        ok = field_mod(acc, p) == x[static_cast<std::size_t>(f * d + t)];
      }
      if (!ok) {
        ++report.failure_count;
        if (report.failures.size() < 16) report.failures.push_back({x, dec.receiver});
      }
    }
  }

 private:
  const Instance& inst_;
  const CodeScheme& s_;
};

}  // namespace

VerificationReport verify_code(const Instance& inst, const CodeScheme& scheme, const VerifyOptions& options) {
  if (const auto problems = check_scheme(inst, scheme); !problems.empty()) throw std::invalid_argument("malformed scheme: " + problems.front());
  const int p = scheme.field;
  const std::size_t width = static_cast<std::size_t>(scheme.message_count * scheme.symbols_per_message);
  const std::size_t b = static_cast<std::size_t>(scheme.broadcast_symbols());

  // p^width, saturating once past the cap.
  std::uint64_t space = 1;
  bool over = false;
  for (std::size_t i = 0; i < width && !over; ++i) {
    if (space > options.exhaustive_cap / static_cast<std::uint64_t>(p)) over = true;
    space *= static_cast<std::uint64_t>(p);
  }
  over = over || space > options.exhaustive_cap;
  VerifyMode mode = options.mode;
  if (mode == VerifyMode::kAuto) mode = over ? VerifyMode::kRandomized : VerifyMode::kExhaustive;
  if (mode == VerifyMode::kExhaustive && over) {
    throw ResourceCapError("exhaustive-vectors", "exhaustive verification would exceed " + std::to_string(options.exhaustive_cap) + " message vectors");
  }

  VerificationReport report;
  report.mode = mode;
  const Checker checker(inst, scheme);
  std::vector<int> x(width, 0);
  std::vector<int> y(b, 0);
  if (mode == VerifyMode::kExhaustive) {
    // Odometer over F_p^width. Bumping coordinate i by one adds column i to y, wrap-around included.
    for (;;) {
      checker.check(x, y, report);
      ++report.vectors;
      std::size_t i = 0;
      for (; i < width; ++i) {
        for (std::size_t k = 0; k < b; ++k) y[k] = (y[k] + scheme.encoder[k][i]) % p;
        if (++x[i] < p) break;
        x[i] = 0;
      }
      if (i == width) break;
    }
  } else {
    report.seed = options.seed;
    report.warning = "randomized verification is evidence, not proof";
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> symbol(0, p - 1);
    for (std::int64_t t = 0; t < options.trials; ++t) {
      for (auto& v : x) v = symbol(rng);
      for (std::size_t k = 0; k < b; ++k) {
        long long acc = 0;
        for (std::size_t i = 0; i < width; ++i) acc += static_cast<long long>(scheme.encoder[k][i]) * x[i];
        y[k] = field_mod(acc, p);
      }
      checker.check(x, y, report);
      ++report.vectors;
    }
  }
  report.pass = report.failure_count == 0;
  return report;
}

nlohmann::json to_json(const CodeScheme& scheme) {
  nlohmann::json decoders = nlohmann::json::array();
  for (const auto& d : scheme.decoders) {
    decoders.push_back({{"receiver", d.receiver}, {"known", d.known}, {"matrix", d.matrix}, {"complete", d.complete}});
  }
  return {{"scheme", scheme.name},
          {"field", scheme.field},
          {"messages", scheme.message_count},
          {"symbols_per_message", scheme.symbols_per_message},
          {"broadcast_symbols", scheme.broadcast_symbols()},
          {"rate", to_string(scheme.rate)},
          {"encoder", scheme.encoder},
          {"decoders", decoders}};
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : report.failures) failures.push_back({{"receiver", f.receiver}, {"message", f.message}});
  nlohmann::json out = {{"mode", to_string(report.mode)},
                        {"vectors", report.vectors},
                        {"pass", report.pass},
                        {"failure_count", report.failure_count},
                        {"failures", failures}};
  if (report.mode == VerifyMode::kRandomized) {
    out["seed"] = report.seed;
    out["warning"] = report.warning;
  }
  return out;
}

}  // namespace bcrate
