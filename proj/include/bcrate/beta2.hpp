#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bcrate/codes.hpp"
#include "bcrate/instance.hpp"

namespace bcrate {

/// Unordered pairs {v, w}, v < w, that lie together in some T(j), sorted.
std::vector<std::pair<int, int>> sharp_relation(const Instance& inst);

/// Vertices v_{-n}..v_n (2n+1 entries, v_{-n} first) and edges j_0..j_n with f(j_i) = v_{i-n},
/// v_i ∈ T(j_i) and v_{i+1} ∈ T(j_i) for i < n.
struct AacWitness {
  std::vector<int> vertices;
  std::vector<int> receivers;

  int n() const { return static_cast<int>(receivers.size()) - 1; }
};

/// Clause-by-clause check; empty when the witness is an almost alternating cycle of `inst`.
std::vector<std::string> validate_aac(const Instance& inst, const AacWitness& witness);

struct Beta2Certificate {
  bool is_two = false;
  /// "compatible_labeling", "almost_alternating_cycle" or "beta_below_2".
  std::string reason;
  /// Class id per message; -1 for messages nobody wants.
  std::vector<int> labeling;
  int class_count = 0;
  std::optional<CodeScheme> scheme;
  std::optional<AacWitness> aac;
  /// 2 + 1/n when an almost alternating cycle was found.
  std::optional<Rational> lower_bound;
};

/// Unwanted messages are dropped first. If all receivers form one weak hyperclique the sum of the
/// wanted messages already works and the verdict is false ("beta_below_2").
Beta2Certificate decide_beta_eq_2(const Instance& inst);

/// Empty when every receiver sees T(j) in one class and f(j) in another; labels of -1 mark unwanted
/// messages and are ignored.
std::vector<std::string> check_compatible(const Instance& inst, const std::vector<int>& labeling);

/// Broadcasts y = Σ x_v and z = Σ φ(v) x_v over the smallest prime field with more elements than
/// classes. Throws std::invalid_argument if the labeling is not compatible or the rates are not 1.
CodeScheme two_symbol_code(const Instance& inst, const std::vector<int>& labeling);

/// β(g) = 2 iff the complement is bipartite. Throws std::invalid_argument for complete graphs.
bool undirected_beta2(const Graph& g);

nlohmann::json to_json(const Beta2Certificate& cert);

}  // namespace bcrate
