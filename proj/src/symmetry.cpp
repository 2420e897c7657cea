#include "bcrate/symmetry.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace bcrate {

SymmetryGroup::SymmetryGroup(int n, std::vector<Permutation> generators) : n_(n) {
  for (auto& p : generators) {
    if (static_cast<int>(p.size()) != n) throw std::invalid_argument("generator has wrong length");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int x : p) {
      if (x < 0 || x >= n || seen[static_cast<std::size_t>(x)]) throw std::invalid_argument("generator is not a permutation");
      seen[static_cast<std::size_t>(x)] = 1;
    }
    bool identity = true;
    for (int i = 0; i < n; ++i) identity = identity && p[static_cast<std::size_t>(i)] == i;
    if (!identity) generators_.push_back(std::move(p));
  }
}

SymmetryGroup SymmetryGroup::cyclic(int n) { return cyclic_blocks(n, n); }

SymmetryGroup SymmetryGroup::cyclic_blocks(int n, int block) {
  if (block < 1 || n % block != 0) throw std::invalid_argument("block size must divide n");
  Permutation p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = (i / block) * block + (i % block + 1) % block;
  return SymmetryGroup(n, {p});
}

MessageSet apply(const Permutation& p, MessageSet s) {
  std::uint64_t out = 0;
  for (std::uint64_t b = s.bits(); b != 0; b &= b - 1) {
    out |= std::uint64_t{1} << p[static_cast<std::size_t>(std::countr_zero(b))];
  }
  return MessageSet(out);
}

namespace {

using ReceiverKey = std::pair<int, std::uint64_t>;

std::vector<ReceiverKey> receiver_keys(const Instance& inst) {
  std::vector<ReceiverKey> keys;
  for (const auto& r : inst.receivers()) keys.emplace_back(r.wants, r.knows.bits());
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

bool preserves(const Instance& inst, const std::vector<ReceiverKey>& keys, const Permutation& p) {
  if (inst.has_rates()) {
    for (int i = 0; i < inst.message_count(); ++i) {
      if (inst.rate(i) != inst.rate(p[static_cast<std::size_t>(i)])) return false;
    }
  }
  std::vector<ReceiverKey> mapped;
  mapped.reserve(keys.size());
  for (const auto& [w, k] : keys) mapped.emplace_back(p[static_cast<std::size_t>(w)], apply(p, MessageSet(k)).bits());
  std::sort(mapped.begin(), mapped.end());
  return mapped == keys;
}

}  // namespace

bool is_automorphism(const Instance& inst, const Permutation& p) {
  if (static_cast<int>(p.size()) != inst.message_count()) return false;
  return preserves(inst, receiver_keys(inst), p);
}

void check_automorphisms(const Instance& inst, const SymmetryGroup& group) {
  if (group.degree() != inst.message_count()) throw std::invalid_argument("symmetry group has wrong degree");
  const auto keys = receiver_keys(inst);
  for (std::size_t g = 0; g < group.generators().size(); ++g) {
    if (!preserves(inst, keys, group.generators()[g])) {
      throw std::invalid_argument("symmetry generator " + std::to_string(g) + " is not an automorphism of the instance");
    }
  }
}

namespace {

class AutomorphismSearch {
 public:
  AutomorphismSearch(const Instance& inst, std::int64_t budget)
      : inst_(inst), n_(inst.message_count()), keys_(receiver_keys(inst)), budget_(budget) {
    count_.assign(static_cast<std::size_t>(n_ * n_), 0);
    for (const auto& [w, k] : keys_) {
      ++count_[static_cast<std::size_t>(w * n_ + w)];
      for (int v : MessageSet(k).elements()) ++count_[static_cast<std::size_t>(w * n_ + v)];
    }
  }

  bool exhausted() const { return budget_ <= 0; }

  /// Automorphism fixing 0..level-1 and mapping level -> target, if one exists.
  bool find(int level, int target, Permutation& out) {
    image_.assign(static_cast<std::size_t>(n_), -1);
    used_.assign(static_cast<std::size_t>(n_), 0);
    for (int i = 0; i < level; ++i) {
      image_[static_cast<std::size_t>(i)] = i;
      used_[static_cast<std::size_t>(i)] = 1;
    }
    if (!fits(level, target)) return false;
    image_[static_cast<std::size_t>(level)] = target;
    used_[static_cast<std::size_t>(target)] = 1;
    if (!extend(level + 1)) return false;
    out = image_;
    return true;
  }

 private:
  int c(int a, int b) const { return count_[static_cast<std::size_t>(a * n_ + b)]; }

  bool fits(int i, int t) const {
    if (c(i, i) != c(t, t)) return false;
    for (int p = 0; p < i; ++p) {
      const int q = image_[static_cast<std::size_t>(p)];
      if (c(i, p) != c(t, q) || c(p, i) != c(q, t)) return false;
    }
    if (inst_.has_rates() && inst_.rate(i) != inst_.rate(t)) return false;
    return true;
  }

  bool extend(int i) {
    if (--budget_ <= 0) return false;
    if (i == n_) return preserves(inst_, keys_, image_);
    for (int t = 0; t < n_; ++t) {
      if (used_[static_cast<std::size_t>(t)] || !fits(i, t)) continue;
      image_[static_cast<std::size_t>(i)] = t;
      used_[static_cast<std::size_t>(t)] = 1;
      if (extend(i + 1)) return true;
      used_[static_cast<std::size_t>(t)] = 0;
      image_[static_cast<std::size_t>(i)] = -1;
      if (budget_ <= 0) return false;
    }
    return false;
  }

  const Instance& inst_;
  int n_;
  std::vector<ReceiverKey> keys_;
  std::vector<int> count_;
  std::int64_t budget_;
  Permutation image_;
  std::vector<char> used_;
};

std::vector<int> orbit_of_point(int point, const std::vector<Permutation>& gens, int n) {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> queue{point};
  seen[static_cast<std::size_t>(point)] = 1;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (const auto& g : gens) {
      const int y = g[static_cast<std::size_t>(queue[h])];
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = 1;
        queue.push_back(y);
      }
    }
  }
  return queue;
}

}  // namespace

SymmetryGroup find_automorphisms(const Instance& inst, std::int64_t node_budget) {
  const int n = inst.message_count();
  AutomorphismSearch search(inst, node_budget);
  std::vector<Permutation> all;
  for (int level = n - 1; level >= 0; --level) {
    // Generators found at deeper levels fix 0..level-1 as well.
    std::vector<Permutation> stabilizer(all.begin(), all.end());
    for (int t = level + 1; t < n; ++t) {
      const auto orbit = orbit_of_point(level, stabilizer, n);
      if (std::find(orbit.begin(), orbit.end(), t) != orbit.end()) continue;
      Permutation p;
      if (search.find(level, t, p)) {
        stabilizer.push_back(p);
        all.push_back(p);
      }
      if (search.exhausted()) return SymmetryGroup(n, all);
    }
  }
  return SymmetryGroup(n, all);
}

SubsetOrbits::SubsetOrbits(const SymmetryGroup& group) {
  const int n = group.degree();
  if (n > 24) throw std::invalid_argument("subset orbits limited to 24 messages");
  const std::size_t total = std::size_t{1} << n;
  orbit_.assign(total, -1);
  std::vector<std::uint32_t> queue;
  for (std::size_t s = 0; s < total; ++s) {
    if (orbit_[s] >= 0) continue;
    const int id = static_cast<int>(representatives_.size());
    representatives_.emplace_back(s);
    orbit_[s] = id;
    queue.assign(1, static_cast<std::uint32_t>(s));
    for (std::size_t h = 0; h < queue.size(); ++h) {
      for (const auto& g : group.generators()) {
        const auto image = apply(g, MessageSet(queue[h])).bits();
        if (orbit_[image] < 0) {
          orbit_[image] = id;
          queue.push_back(static_cast<std::uint32_t>(image));
        }
      }
    }
    sizes_.push_back(static_cast<int>(queue.size()));
  }
}

SymmetryGroup symmetry_from_name(const Instance& inst, const std::string& name) {
  const int n = inst.message_count();
  if (name.empty() || name == "none") return SymmetryGroup::trivial(n);
  if (name == "auto") return find_automorphisms(inst);
  if (name == "cyclic") return SymmetryGroup::cyclic(n);
  if (name.rfind("cyclic", 0) == 0) {
    const std::string digits = name.substr(6);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      throw std::invalid_argument("unknown symmetry '" + name + "'");
    }
    return SymmetryGroup::cyclic_blocks(n, std::stoi(digits));
  }
  throw std::invalid_argument("unknown symmetry '" + name + "'");
}

SymmetryGroup read_symmetry(const std::filesystem::path& path, int n) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (!doc.contains("generators") || !doc["generators"].is_array()) {
    throw ParseError(path.string() + ": generators: expected an array of permutations");
  }
  std::vector<Permutation> gens;
  for (const auto& g : doc["generators"]) {
    if (!g.is_array()) throw ParseError(path.string() + ": generators: expected an array of permutations");
    Permutation p;
    for (const auto& x : g) {
      if (!x.is_number_integer()) throw ParseError(path.string() + ": generators: expected integers");
      p.push_back(x.get<int>());
    }
    gens.push_back(std::move(p));
  }
  return SymmetryGroup(n, std::move(gens));
}

}  // namespace bcrate
