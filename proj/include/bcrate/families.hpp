#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "bcrate/instance.hpp"
#include "bcrate/symmetry.hpp"

namespace bcrate {

Graph cycle(int n);
/// Cayley graph of Z_n with generators ±1..±k.
Graph circulant(int n, int k);
/// Cayley graph of Z_n with generators {±1, n/2}.
Graph cayley_3regular(int n);
/// Vertices are the k-subsets of [n] in lexicographic order; adjacent iff they intersect.
Graph kneser_complement(int n, int k);

struct ProjectiveHadamard {
  int q = 0;
  Graph graph;
  /// Canonical coordinates (first nonzero entry 1), lexicographic.
  std::vector<std::array<int, 3>> points;
  /// Pairwise dot products mod q; a representation of the graph over F_q.
  std::vector<std::vector<int>> gram;
};
/// Non-self-orthogonal points of PG(2, q), adjacent iff their dot product is nonzero. q an odd prime.
ProjectiveHadamard projective_hadamard(int q);

struct OddtownFamily {
  Graph graph;
  /// Rows are family members, columns the ground set [m].
  std::vector<std::vector<int>> incidence;
};
/// 16 sets per block of 6 ground elements; adjacency = odd intersection. m a positive multiple of 6.
OddtownFamily oddtown_trianglefree(int m);

/// Messages v_{-n}..v_n are numbered 0..2n. Receivers j_0..j_n form the almost alternating cycle;
/// n further receivers want v_1..v_n with everything else known, so that every message is wanted.
Instance aac_instance(int n);

/// Receivers ({a}, b), ({b}, c), ({c}, a) on messages a=0, b=1, c=2.
Instance tri3();
/// Outer cycle 0..4, spokes i-(i+5), inner pentagram (5+i)-(5+(i+2)%5).
Graph petersen();
/// Mycielskian of the 5-cycle: cycle 0..4, shadows 5+i joined to the cycle neighbours of i, hub 10.
Graph groetzsch();
/// Chvátal's 4-regular triangle-free graph on 12 vertices.
Graph chvatal();

/// G(n, p) with the given generator.
Graph random_graph(int n, double p, std::mt19937_64& rng);
/// `receivers` receivers with uniformly random wanted message and side information density `p`.
Instance random_instance(int n, int receivers, double p, std::mt19937_64& rng);

struct ExpectedBound {
  std::string name;
  Rational value;
  std::string note;
};

/// Output of the named-family dispatcher used by the command line.
struct FamilyOutput {
  std::string family;
  std::map<std::string, int> params;
  Instance instance;
  std::optional<Graph> graph;
  /// Generators of a known symmetry subgroup (possibly trivial).
  SymmetryGroup symmetry;
  std::vector<ExpectedBound> expected;
};

/// family ∈ {cycle, cocycle, circulant, cayley3, kneser-complement, hadamard, oddtown, aac, tri3,
/// petersen, groetzsch, chvatal}. Throws std::invalid_argument on unknown names or bad parameters.
FamilyOutput make_family(const std::string& family, const std::map<std::string, int>& params);

std::vector<std::string> family_names();

}  // namespace bcrate
