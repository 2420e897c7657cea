#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bcrate/rational.hpp"

namespace bcrate {

enum class Relation { kGreaterEqual, kLessEqual, kEqual };

struct Term {
  int var = 0;
  Rational coef;
};

struct LpRow {
  std::vector<Term> terms;  // sorted by var, no zero coefficients, no duplicates
  Relation relation = Relation::kGreaterEqual;
  Rational rhs;
};

/// Minimization LP with sparse rational rows. Variables are free unless given a lower bound.
class LpProblem {
 public:
  explicit LpProblem(int num_vars = 0, std::optional<Rational> default_lower = std::nullopt);

  int add_variable(std::optional<Rational> lower = std::nullopt);
  void set_lower_bound(int var, std::optional<Rational> lower);
  void set_objective(std::vector<Term> terms);
  /// Merges duplicate variables and drops zero coefficients before storing.
  std::size_t add_row(std::vector<Term> terms, Relation relation, Rational rhs);

  int num_vars() const { return static_cast<int>(lower_.size()); }
  const std::vector<Term>& objective() const { return objective_; }
  const std::vector<LpRow>& rows() const { return rows_; }
  const std::optional<Rational>& lower_bound(int var) const { return lower_.at(static_cast<std::size_t>(var)); }

  /// Plain-text "min / st" rendering for inspection.
  std::string dump() const;

 private:
  std::vector<std::optional<Rational>> lower_;
  std::vector<Term> objective_;
  std::vector<LpRow> rows_;
};

/// Canonical form of a term list: merged, zero-free, sorted by variable.
std::vector<Term> normalize_terms(std::vector<Term> terms);

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string to_string(LpStatus status);

struct LpOptimum {
  LpStatus status = LpStatus::kInfeasible;
  Rational value;
  std::vector<Rational> assignment;
  /// One multiplier per row; proves `value` is a lower bound by weak duality when dual_certified.
  std::vector<Rational> duals;
  bool dual_certified = false;
  int iterations = 0;
  /// "primal" or "dual": which standard form the simplex ran on.
  std::string route;
  /// True when the optimal basis came from the floating-point pass and was certified exactly.
  bool warm_started = false;
};

struct LpViolation {
  enum class Kind { kRow, kLowerBound };
  Kind kind = Kind::kRow;
  std::size_t index = 0;  // row index or variable index
};

struct SolveOptions {
  /// Consecutive degenerate pivots tolerated under largest-coefficient pricing before
  /// switching to Bland's rule (until the next objective improvement).
  int degenerate_switch = 30;
  /// Force Bland's rule for every pivot.
  bool bland_only = false;
  /// Locate a candidate optimal basis in double precision first, then certify it exactly.
  /// A basis that fails the exact check is discarded and the exact simplex runs from scratch,
  /// so this never changes the returned value.
  bool float_warm_start = true;
};

/// Exact optimum by two-phase revised simplex. Optimal results are re-verified by substitution.
LpOptimum solve_min(const LpProblem& problem, const SolveOptions& options = {});

/// Rows and bounds violated by `assignment` (exact comparison).
std::vector<LpViolation> check_feasible(const LpProblem& problem, std::span<const Rational> assignment);

/// Objective value of an assignment.
Rational evaluate_objective(const LpProblem& problem, std::span<const Rational> assignment);

/// True when `duals` is a feasible dual solution whose objective equals `value`.
bool verify_dual_certificate(const LpProblem& problem, std::span<const Rational> duals, const Rational& value);

}  // namespace bcrate
