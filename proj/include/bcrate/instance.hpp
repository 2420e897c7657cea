#pragma once

#include <json.hpp>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bcrate/message_set.hpp"
#include "bcrate/rational.hpp"

namespace bcrate {

/// One receiver: wants message `wants`, already holds the messages in `knows`.
struct Receiver {
  int wants = 0;
  MessageSet knows;

  bool operator==(const Receiver&) const = default;
};

/// Broadcasting-with-side-information instance on messages 0..n-1.
///
/// Construction never rejects structurally odd data (a receiver that knows its own
/// message, a zero rate); `validate` reports those. Only n outside [1, 64] throws.
class Instance {
 public:
  Instance() = default;
  Instance(int n, std::vector<Receiver> receivers, std::vector<Rational> rates = {});

  int message_count() const { return n_; }
  int receiver_count() const { return static_cast<int>(receivers_.size()); }
  const std::vector<Receiver>& receivers() const { return receivers_; }
  const Receiver& receiver(int j) const { return receivers_.at(static_cast<std::size_t>(j)); }

  bool has_rates() const { return !rates_.empty(); }
  Rational rate(int message) const;
  std::vector<Rational> rates() const;
  /// Sum of all message rates (n for unit rates).
  Rational total_rate() const;
  /// Factor the original rates were divided by during normalization (1 if untouched).
  const Rational& rate_scale() const { return rate_scale_; }

  MessageSet all() const { return MessageSet::full(n_); }
  /// S(j) = N(j) ∪ {f(j)}.
  MessageSet side(int j) const;
  /// T(j) = V ∖ S(j).
  MessageSet unknown(int j) const { return all() - side(j); }

  /// Copy with rates divided by their maximum; records the factor in rate_scale().
  Instance normalized() const;
  /// Copy with duplicate receivers removed (first occurrence kept).
  Instance deduplicated() const;
  /// Copy with every rate reset to 1.
  Instance unweighted() const;

  bool operator==(const Instance& other) const;

 private:
  int n_ = 0;
  std::vector<Receiver> receivers_;
  std::vector<Rational> rates_;
  Rational rate_scale_ = 1;
};

/// Simple undirected graph on vertices 0..n-1 (n <= 64).
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, const std::vector<std::pair<int, int>>& edges);

  int vertex_count() const { return n_; }
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const { return adjacency_[static_cast<std::size_t>(u)].contains(v); }
  MessageSet neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return neighbors(v).size(); }
  int edge_count() const;
  /// Sorted list of edges (u < v).
  std::vector<std::pair<int, int>> edges() const;
  MessageSet all() const { return MessageSet::full(n_); }

  bool operator==(const Graph&) const = default;

 private:
  int n_ = 0;
  std::vector<MessageSet> adjacency_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const Instance& inst);

/// One receiver per vertex wanting it and knowing its neighbors.
Instance from_graph(const Graph& g);

/// a ∪ {f(j) : N(j) ⊆ a}: everything decodable from `a` in one step.
MessageSet closure_step(const Instance& inst, MessageSet a);

/// Iterates closure_step to its fixpoint.
MessageSet closure(const Instance& inst, MessageSet a);

/// A ⇝ B: a ⊆ b and every x ∈ b∖a is wanted by a receiver whose side information lies in a.
bool decodes(const Instance& inst, MessageSet a, MessageSet b);

/// Messages of `b` are shifted by a.message_count().
Instance disjoint_union(const Instance& a, const Instance& b);
Graph disjoint_union(const Graph& a, const Graph& b);

/// Vertex (u, i) is numbered u * t + i; (u,i) ~ (v,j) iff uv ∈ E.
Graph blow_up(const Graph& g, int t);

Graph complement(const Graph& g);

/// Sub-instance on the messages of `keep`, renumbered in increasing order: receivers wanting a kept
/// message, with side information intersected with `keep`.
struct InducedInstance {
  Instance instance;
  std::vector<int> messages;   // new message index -> original
  std::vector<int> receivers;  // new receiver index -> original
};
InducedInstance induced(const Instance& inst, MessageSet keep);

// ---------------------------------------------------------------------------
// File I/O. Rationals are serialized as "p/q" strings.

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const Instance& inst);
nlohmann::json to_json(const Graph& g);
/// Parses an instance object; rates are normalized so the maximum is 1.
Instance instance_from_json(const nlohmann::json& doc);
Graph graph_from_json(const nlohmann::json& doc);

Instance read_instance(const std::filesystem::path& path);
void write_instance(const Instance& inst, const std::filesystem::path& path);
Graph read_graph(const std::filesystem::path& path);
void write_graph(const Graph& g, const std::filesystem::path& path);

/// Either file kind. A graph file (has "edges") is returned as a graph instance along with the graph.
struct LoadedInstance {
  Instance instance;
  std::optional<Graph> graph;
};
LoadedInstance load_any(const std::filesystem::path& path);
LoadedInstance load_any_json(const nlohmann::json& doc);

}  // namespace bcrate
