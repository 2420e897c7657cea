#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bcrate/errors.hpp"
#include "bcrate/instance.hpp"
#include "bcrate/linalg.hpp"

namespace bcrate {

struct ExpandingSequence {
  std::vector<int> receivers;
  /// Sum of the rates of the wanted messages.
  Rational weight;
};

/// f(j_l) avoids S(j_i) for every earlier i.
bool is_expanding_sequence(const Instance& inst, std::span<const int> receivers);
Rational sequence_weight(const Instance& inst, std::span<const int> receivers);

/// Maximum-weight expanding sequence by memoized search over the set of covered messages.
/// Throws ResourceCapError("alpha-states") once more than `state_cap` states are memoized.
ExpandingSequence alpha_exact(const Instance& inst, std::int64_t state_cap = 4'000'000);

/// Greedy expanding sequence: heaviest eligible receiver first, fewest newly covered messages on ties.
ExpandingSequence alpha_greedy(const Instance& inst);

/// Pairwise test: for distinct members i, j either f(i) = f(j) or f(i) ∈ N(j).
bool is_weak_hyperclique(const Instance& inst, std::span<const int> receivers);
/// Every receiver wanting a message of `messages` has `messages` ⊆ S(j).
bool is_strong_hyperclique(const Instance& inst, MessageSet messages);

enum class CoverKind { kWeak, kStrong };
std::string to_string(CoverKind kind);

/// A hyperclique with its weight. Weak hypercliques list receivers; strong ones list messages.
struct WeightedClique {
  std::vector<int> members;
  Rational weight;
};

struct FractionalCover {
  CoverKind kind = CoverKind::kStrong;
  std::vector<WeightedClique> cliques;
  Rational total;
};

/// Inclusion-maximal hypercliques in canonical (sorted) order.
/// Throws ResourceCapError("hyperclique-count") beyond `cap` sets.
std::vector<std::vector<int>> enumerate_maximal_hypercliques(const Instance& inst, CoverKind kind,
                                                             std::size_t cap = 200'000);

/// Problems found when checking a cover: non-hyperclique members, negative weights, uncovered
/// receivers, a total that does not match the weights. Empty means valid.
std::vector<std::string> check_cover(const Instance& inst, const FractionalCover& cover);

/// Minimum-weight fractional cover, solved exactly over the maximal hypercliques.
/// Weak covers need Σ_{J∋j} w(J) ≥ r_{f(j)} for each receiver j; strong covers need
/// Σ_{T∋i} w(T) ≥ r_i for every wanted message i.
FractionalCover fractional_cover(const Instance& inst, CoverKind kind);

struct CliqueCover {
  int size = 0;
  /// A partition of the vertices into cliques.
  std::vector<std::vector<int>> cliques;
};
/// Exact clique cover number χ̄ by branch and bound. Throws ResourceCapError("clique-cover-nodes").
CliqueCover integer_clique_cover(const Graph& g, std::int64_t node_budget = 50'000'000);

/// A matrix fitting a graph over F_p: nonzero diagonal and zeros on non-adjacent off-diagonal pairs.
struct Representation {
  int field = 2;
  FieldMatrix matrix;
};

/// Why a matrix does not fit a graph, or empty.
std::vector<std::string> check_representation(const Graph& g, const Representation& rep);

struct MinrkResult {
  int value = 0;
  Representation representation;
  /// False when `value` is the rank of a supplied representation rather than a proven minimum.
  bool exact = false;
};

/// Minimum GF(2) rank over all representations. Throws ResourceCapError("minrk-free-entries") when
/// 2|E| exceeds `max_free_entries`.
MinrkResult minrk2_exact(const Graph& g, int max_free_entries = 26);
/// Rank of a supplied representation (an upper bound on minrk over that field).
MinrkResult minrk_bound(const Graph& g, const Representation& rep);

/// Largest clique size of a graph.
int clique_number(const Graph& g);

}  // namespace bcrate
