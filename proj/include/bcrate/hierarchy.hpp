#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bcrate/errors.hpp"
#include "bcrate/exact_lp.hpp"
#include "bcrate/instance.hpp"
#include "bcrate/symmetry.hpp"

namespace bcrate {

/// X(S) for every subset S, indexed by bitmask.
class EntropyVector {
 public:
  EntropyVector() = default;
  explicit EntropyVector(int n, Rational fill = 0);

  int message_count() const { return n_; }
  Rational& operator[](MessageSet s) { return values_[static_cast<std::size_t>(s.bits())]; }
  const Rational& operator[](MessageSet s) const { return values_[static_cast<std::size_t>(s.bits())]; }
  const std::vector<Rational>& values() const { return values_; }

 private:
  int n_ = 0;
  std::vector<Rational> values_;
};

/// w(T) for every non-empty T (entry 0 unused).
using WeightVector = std::vector<Rational>;

struct RowCounts {
  int initialize = 0;
  int nonnegativity = 0;
  int slope = 0;
  int monotonicity = 0;
  int decode = 0;
  std::map<int, int> submodularity;  // order -> rows

  int total() const;
};

struct HierarchyOptions {
  /// Single-increment slope/monotonicity and closure-step decode rows (same feasible region).
  bool reduced = true;
  std::optional<SymmetryGroup> symmetry;
  /// Ceilings on n without symmetry: levels 1-2 and levels >= 3.
  int max_n_low = 12;
  int max_n_high = 6;
  bool override_ceiling = false;
};

struct HierarchyLp {
  LpProblem problem;
  /// Variable v stands for X(S) for every S in the orbit of representatives[v].
  std::vector<MessageSet> representatives;
  /// Variable index per subset bitmask.
  std::vector<int> variable_of;
  RowCounts counts;
};

HierarchyLp build_hierarchy_lp(const Instance& inst, int k, const HierarchyOptions& options = {});

struct HierarchyBound {
  int level = 0;
  Rational value;
  EntropyVector solution;
  RowCounts counts;
  int variables = 0;
  int rows = 0;
  int iterations = 0;
  std::string route;
};

/// Exact b_k. Throws std::logic_error if the LP is not optimal (it always is for valid instances).
HierarchyBound solve_bk(const Instance& inst, int k, const HierarchyOptions& options = {});

/// Checks the full (unreduced) constraint set of level k.
bool verify_hierarchy_membership(const EntropyVector& x, const Instance& inst, int k);

/// Unit-rate slope plus every order of submodularity: for R ≠ ∅, Z ∩ R = ∅,
/// Σ_{T⊆R} (−1)^{|R∖T|} X(T∪Z) ≤ [|R| = 1].
bool satisfies_slope_and_submodularity(const EntropyVector& x);

struct CoverageResult {
  bool ok = false;
  WeightVector weights;
  /// Set R of the first violated almost-coverage inequality (when !ok and initialize was tight).
  std::optional<MessageSet> violated;
  std::string witness;
};

/// Writes F(S) = X(S̄) − |S̄| in the coverage basis; ok iff X(V) = n and every weight is nonnegative.
CoverageResult decompose_coverage(const EntropyVector& x);

/// X(S) = |S| + Σ_{T ⊄ S} w(T).
EntropyVector coverage_vector(int n, const WeightVector& w);

/// X(S) = |S| + max{|I| : I independent, I ∩ S = ∅}; feasible for level 1 with value α.
EntropyVector alpha_feasible_vector(const Graph& g);

}  // namespace bcrate
