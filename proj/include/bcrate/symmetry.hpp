#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bcrate/instance.hpp"

namespace bcrate {

/// Image list: p[i] is where message i goes.
using Permutation = std::vector<int>;

/// Group of message permutations given by generators. Only the generators are stored.
class SymmetryGroup {
 public:
  SymmetryGroup() = default;
  /// Throws std::invalid_argument if a generator is not a permutation of [0, n).
  SymmetryGroup(int n, std::vector<Permutation> generators);

  static SymmetryGroup trivial(int n) { return SymmetryGroup(n, {}); }
  /// i -> i+1 mod n.
  static SymmetryGroup cyclic(int n);
  /// Rotates each consecutive block of `block` messages by one (n must be a multiple of block).
  static SymmetryGroup cyclic_blocks(int n, int block);

  int degree() const { return n_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  bool is_trivial() const { return generators_.empty(); }

 private:
  int n_ = 0;
  std::vector<Permutation> generators_;
};

MessageSet apply(const Permutation& p, MessageSet s);

/// True when p maps the receiver multiset onto itself (wanted messages and side information).
bool is_automorphism(const Instance& inst, const Permutation& p);

/// Throws std::invalid_argument naming the first generator that is not an automorphism.
void check_automorphisms(const Instance& inst, const SymmetryGroup& group);

/// Searches for generators of the automorphism group by backtracking along a stabilizer chain.
/// `node_budget` bounds the search; when it runs out the generators found so far are returned
/// (they generate a subgroup, which is still sound for orbit reduction).
SymmetryGroup find_automorphisms(const Instance& inst, std::int64_t node_budget = 2'000'000);

/// Orbits of the induced action on all 2^n subsets.
class SubsetOrbits {
 public:
  /// Limited to n <= 24.
  explicit SubsetOrbits(const SymmetryGroup& group);

  int count() const { return static_cast<int>(representatives_.size()); }
  int orbit_of(MessageSet s) const { return orbit_[static_cast<std::size_t>(s.bits())]; }
  /// Smallest bitmask in the orbit.
  MessageSet representative(int orbit) const { return representatives_[static_cast<std::size_t>(orbit)]; }
  int orbit_size(int orbit) const { return sizes_[static_cast<std::size_t>(orbit)]; }
  const std::vector<MessageSet>& representatives() const { return representatives_; }

 private:
  std::vector<int> orbit_;
  std::vector<MessageSet> representatives_;
  std::vector<int> sizes_;
};

/// Parses "none", "cyclic", "cyclicK" (blocks of size K) or "auto".
SymmetryGroup symmetry_from_name(const Instance& inst, const std::string& name);

/// Reads {"generators": [[...], ...]} from a JSON file.
SymmetryGroup read_symmetry(const std::filesystem::path& path, int n);

}  // namespace bcrate
