#include "bcrate/exact_lp.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bcrate {

std::vector<Term> normalize_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().var == t.var) {
      out.back().coef += t.coef;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const Term& t) { return sgn(t.coef) == 0; });
  return out;
}

LpProblem::LpProblem(int num_vars, std::optional<Rational> default_lower)
    : lower_(static_cast<std::size_t>(num_vars), default_lower) {}

int LpProblem::add_variable(std::optional<Rational> lower) {
  lower_.push_back(std::move(lower));
  return num_vars() - 1;
}

void LpProblem::set_lower_bound(int var, std::optional<Rational> lower) {
  lower_.at(static_cast<std::size_t>(var)) = std::move(lower);
}

void LpProblem::set_objective(std::vector<Term> terms) {
  objective_ = normalize_terms(std::move(terms));
  for (const auto& t : objective_) {
    if (t.var < 0 || t.var >= num_vars()) throw std::out_of_range("objective references unknown variable");
  }
}

std::size_t LpProblem::add_row(std::vector<Term> terms, Relation relation, Rational rhs) {
  LpRow row{normalize_terms(std::move(terms)), relation, std::move(rhs)};
  for (const auto& t : row.terms) {
    if (t.var < 0 || t.var >= num_vars()) throw std::out_of_range("row references unknown variable");
  }
  rows_.push_back(std::move(row));
  return rows_.size() - 1;
}

namespace {

std::string render_terms(const std::vector<Term>& terms) {
  if (terms.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms) {
    const bool negative = sgn(t.coef) < 0;
    if (!first) out << (negative ? " - " : " + ");
    else if (negative) out << "-";
    const Rational mag = abs(t.coef);
    if (mag != 1) out << mag.get_str() << " ";
    out << "x" << t.var;
    first = false;
  }
  return out.str();
}

const char* relation_symbol(Relation r) {
  switch (r) {
    case Relation::kGreaterEqual: return ">=";
    case Relation::kLessEqual: return "<=";
    case Relation::kEqual: return "=";
  }
  return "?";
}

}  // namespace

std::string LpProblem::dump() const {
  std::ostringstream out;
  out << "min " << render_terms(objective_) << "\nst\n";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    out << "  r" << i << ": " << render_terms(rows_[i].terms) << " " << relation_symbol(rows_[i].relation) << " "
        << rows_[i].rhs.get_str() << "\n";
  }
  out << "bounds\n";
  for (int v = 0; v < num_vars(); ++v) {
    if (lower_bound(v)) {
      out << "  x" << v << " >= " << lower_bound(v)->get_str() << "\n";
    } else {
      out << "  x" << v << " free\n";
    }
  }
  return out.str();
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Standard form engine: min cost·v  s.t.  M v = rhs (rhs >= 0), v >= 0.

namespace {

struct SparseColumn {
  std::vector<int> rows;
  std::vector<Rational> vals;
};

struct StandardForm {
  int m = 0;
  std::vector<SparseColumn> cols;
  std::vector<Rational> cost;
  std::vector<Rational> rhs;
};

struct EngineResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<Rational> x;   // one per column of the form
  std::vector<Rational> pi;  // simplex multipliers, one per row
  Rational value;
  int iterations = 0;
  bool warm_started = false;
};

/// Sparse row of the basis inverse, sorted by column index.
struct SparseRow {
  std::vector<int> idx;
  std::vector<Rational> val;

  const Rational* find(int k) const {
    auto it = std::lower_bound(idx.begin(), idx.end(), k);
    if (it == idx.end() || *it != k) return nullptr;
    return &val[static_cast<std::size_t>(it - idx.begin())];
  }
};

/// Dense-inverse revised simplex in double precision. Only proposes a basis; nothing it
/// computes is returned to callers without an exact check.
class FloatSimplex {
 public:
  FloatSimplex(int m, const std::vector<SparseColumn>& cols, const std::vector<Rational>& cost,
               const std::vector<Rational>& rhs, int first_artificial, std::vector<int> basis)
      : m_(m), first_artificial_(first_artificial), basis_(std::move(basis)) {
    cols_.reserve(cols.size());
    for (const auto& c : cols) {
      FloatColumn fc;
      fc.rows = c.rows;
      for (const auto& v : c.vals) fc.vals.push_back(v.get_d());
      cols_.push_back(std::move(fc));
    }
    for (const auto& c : cost) cost_.push_back(c.get_d());
    for (const auto& b : rhs) rhs_.push_back(b.get_d());
  }

  /// Candidate optimal basis, or nullopt if the pass gave up or saw infeasibility/unboundedness.
  std::optional<std::vector<int>> run(int& iterations) {
    const int total = static_cast<int>(cols_.size());
    position_.assign(static_cast<std::size_t>(total), -1);
    for (int i = 0; i < m_; ++i) position_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] = i;
    cap_ = 50L * (m_ + total) + 1000;

    // Both phases run on a perturbed right-hand side so degenerate vertices do not stall
    // the pricing; the true data is restored afterwards and repaired by dual pivots.
    const std::vector<double> original = rhs_;
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> jitter(1e-6, 2e-6);
    for (auto& b : rhs_) b += jitter(rng) * (1.0 + std::abs(b));
    if (!reinvert()) return std::nullopt;

    if (total > first_artificial_) {
      std::vector<double> phase1(static_cast<std::size_t>(total), 0.0);
      for (int j = first_artificial_; j < total; ++j) phase1[static_cast<std::size_t>(j)] = 1.0;
      if (primal(phase1, total) != Outcome::kOptimal) return std::nullopt;
      double infeasibility = 0;
      for (int i = 0; i < m_; ++i) {
        if (basis_[static_cast<std::size_t>(i)] >= first_artificial_) infeasibility += xb_[static_cast<std::size_t>(i)];
      }
      if (infeasibility > 1e-4) return std::nullopt;
      drive_out();
    }
    std::vector<double> cost = cost_;
    cost.resize(static_cast<std::size_t>(total), 0.0);
    if (primal(cost, first_artificial_) != Outcome::kOptimal) return std::nullopt;

    rhs_ = original;
    if (!reinvert()) return std::nullopt;
    if (!dual_cleanup(cost, first_artificial_)) return std::nullopt;
    if (primal(cost, first_artificial_) != Outcome::kOptimal) return std::nullopt;
    iterations = iterations_;
    return basis_;
  }

 private:
  struct FloatColumn {
    std::vector<int> rows;
    std::vector<double> vals;
  };
  enum class Outcome { kOptimal, kUnbounded, kFailed };

  static constexpr double kPriceTol = 1e-9;
  static constexpr double kPivotTol = 1e-7;
  static constexpr double kFeasTol = 1e-9;

  double& inv(int i, int k) { return binv_[static_cast<std::size_t>(i) * static_cast<std::size_t>(m_) + static_cast<std::size_t>(k)]; }

  bool reinvert() {
    const std::size_t mm = static_cast<std::size_t>(m_);
    std::vector<double> b(mm * mm, 0.0);
    for (int i = 0; i < m_; ++i) {
      const auto& c = cols_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
      for (std::size_t k = 0; k < c.rows.size(); ++k) b[static_cast<std::size_t>(c.rows[k]) * mm + static_cast<std::size_t>(i)] = c.vals[k];
    }
    binv_.assign(mm * mm, 0.0);
    for (std::size_t i = 0; i < mm; ++i) binv_[i * mm + i] = 1.0;
    // Gauss-Jordan with partial pivoting on [B | I].
    for (std::size_t col = 0; col < mm; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col + 1; r < mm; ++r) {
        if (std::abs(b[r * mm + col]) > std::abs(b[piv * mm + col])) piv = r;
      }
      if (std::abs(b[piv * mm + col]) < 1e-11) return false;
      if (piv != col) {
        for (std::size_t k = 0; k < mm; ++k) {
          std::swap(b[piv * mm + k], b[col * mm + k]);
          std::swap(binv_[piv * mm + k], binv_[col * mm + k]);
        }
      }
      const double p = b[col * mm + col];
      for (std::size_t k = 0; k < mm; ++k) {
        b[col * mm + k] /= p;
        binv_[col * mm + k] /= p;
      }
      for (std::size_t r = 0; r < mm; ++r) {
        const double f = b[r * mm + col];
        if (r == col || f == 0.0) continue;
        for (std::size_t k = 0; k < mm; ++k) {
          b[r * mm + k] -= f * b[col * mm + k];
          binv_[r * mm + k] -= f * binv_[col * mm + k];
        }
      }
    }
    xb_.assign(mm, 0.0);
    for (std::size_t i = 0; i < mm; ++i) {
      double sum = 0;
      for (std::size_t k = 0; k < mm; ++k) sum += binv_[i * mm + k] * rhs_[k];
      xb_[i] = sum;
    }
    since_reinvert_ = 0;
    return true;
  }

  double dot_row(int r, int j) {
    const auto& c = cols_[static_cast<std::size_t>(j)];
    double sum = 0;
    for (std::size_t k = 0; k < c.rows.size(); ++k) sum += inv(r, c.rows[k]) * c.vals[k];
    return sum;
  }

  void column_image(int j, std::vector<double>& alpha) {
    for (int i = 0; i < m_; ++i) alpha[static_cast<std::size_t>(i)] = dot_row(i, j);
  }

  void multipliers(const std::vector<double>& cost, std::vector<double>& pi) {
    std::fill(pi.begin(), pi.end(), 0.0);
    for (int i = 0; i < m_; ++i) {
      const double cb = cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
      if (cb == 0.0) continue;
      for (int k = 0; k < m_; ++k) pi[static_cast<std::size_t>(k)] += cb * inv(i, k);
    }
  }

  double reduced(const std::vector<double>& cost, const std::vector<double>& pi, int j) const {
    const auto& c = cols_[static_cast<std::size_t>(j)];
    double d = cost[static_cast<std::size_t>(j)];
    for (std::size_t k = 0; k < c.rows.size(); ++k) d -= pi[static_cast<std::size_t>(c.rows[k])] * c.vals[k];
    return d;
  }

  bool pivot(int r, int q, const std::vector<double>& alpha) {
    const double pr = alpha[static_cast<std::size_t>(r)];
    for (int k = 0; k < m_; ++k) inv(r, k) /= pr;
    xb_[static_cast<std::size_t>(r)] /= pr;
    for (int i = 0; i < m_; ++i) {
      const double f = alpha[static_cast<std::size_t>(i)];
      if (i == r || f == 0.0) continue;
      for (int k = 0; k < m_; ++k) inv(i, k) -= f * inv(r, k);
      xb_[static_cast<std::size_t>(i)] -= f * xb_[static_cast<std::size_t>(r)];
    }
    position_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] = -1;
    basis_[static_cast<std::size_t>(r)] = q;
    position_[static_cast<std::size_t>(q)] = r;
    ++iterations_;
    if (++since_reinvert_ >= 100) return reinvert();
    return true;
  }

  /// Primal simplex with Devex pricing and a two-pass (Harris) ratio test.
  Outcome primal(const std::vector<double>& cost, int allowed) {
    const int total = static_cast<int>(cols_.size());
    std::vector<double> pi(static_cast<std::size_t>(m_));
    std::vector<double> alpha(static_cast<std::size_t>(m_));
    std::vector<double> weight(static_cast<std::size_t>(total), 1.0);
    for (;;) {
      if (iterations_ > cap_) return Outcome::kFailed;
      multipliers(cost, pi);
      int entering = -1;
      double best = 0;
        for (int j = 0; j < allowed; ++j) {
        if (position_[static_cast<std::size_t>(j)] >= 0) continue;
        const double d = reduced(cost, pi, j);
        if (d >= -kPriceTol) continue;
        const double score = d * d / weight[static_cast<std::size_t>(j)];
        if (score > best) {
          best = score;
          entering = j;
        }
      }
      if (entering < 0) return Outcome::kOptimal;
      column_image(entering, alpha);
      double theta_max = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        const double a = alpha[static_cast<std::size_t>(i)];
        if (a > kPivotTol) theta_max = std::min(theta_max, (std::max(xb_[static_cast<std::size_t>(i)], 0.0) + kFeasTol) / a);
      }
      if (!std::isfinite(theta_max)) return Outcome::kUnbounded;
      int leaving = -1;
      for (int i = 0; i < m_; ++i) {
        const double a = alpha[static_cast<std::size_t>(i)];
        if (a <= kPivotTol || std::max(xb_[static_cast<std::size_t>(i)], 0.0) / a > theta_max) continue;
        if (leaving < 0 || a > alpha[static_cast<std::size_t>(leaving)]) leaving = i;
      }
      // Devex reference weights.
      const double aq = alpha[static_cast<std::size_t>(leaving)];
      const double wq = weight[static_cast<std::size_t>(entering)];
      for (int j = 0; j < allowed; ++j) {
        if (position_[static_cast<std::size_t>(j)] >= 0 || j == entering) continue;
        const double arj = dot_row(leaving, j);
        if (arj == 0.0) continue;
        const double ratio = arj / aq;
        weight[static_cast<std::size_t>(j)] = std::max(weight[static_cast<std::size_t>(j)], ratio * ratio * wq);
      }
      weight[static_cast<std::size_t>(basis_[static_cast<std::size_t>(leaving)])] = std::max(wq / (aq * aq), 1.0);
      if (!pivot(leaving, entering, alpha)) return Outcome::kFailed;
    }
  }

  /// Dual simplex pivots until the basis is primal feasible again (it stays dual feasible).
  bool dual_cleanup(const std::vector<double>& cost, int allowed) {
    std::vector<double> pi(static_cast<std::size_t>(m_));
    std::vector<double> alpha(static_cast<std::size_t>(m_));
    for (;;) {
      if (iterations_ > cap_) return false;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (xb_[static_cast<std::size_t>(i)] < -kFeasTol && (r < 0 || xb_[static_cast<std::size_t>(i)] < xb_[static_cast<std::size_t>(r)])) r = i;
      }
      if (r < 0) return true;
      multipliers(cost, pi);
      int entering = -1;
      double best_ratio = 0;
      double best_mag = 0;
      for (int j = 0; j < allowed; ++j) {
        if (position_[static_cast<std::size_t>(j)] >= 0) continue;
        const double arj = dot_row(r, j);
        if (arj >= -kPivotTol) continue;
        const double ratio = std::max(reduced(cost, pi, j), 0.0) / -arj;
        if (entering < 0 || ratio < best_ratio - 1e-12 || (ratio <= best_ratio + 1e-12 && -arj > best_mag)) {
          entering = j;
          best_ratio = ratio;
          best_mag = -arj;
        }
      }
      if (entering < 0) return false;
      column_image(entering, alpha);
      if (!pivot(r, entering, alpha)) return false;
    }
  }

  void drive_out() {
    std::vector<double> alpha(static_cast<std::size_t>(m_));
    for (int r = 0; r < m_; ++r) {
      if (basis_[static_cast<std::size_t>(r)] < first_artificial_) continue;
      int best = -1;
      double best_mag = 1e-7;
      for (int j = 0; j < first_artificial_; ++j) {
        if (position_[static_cast<std::size_t>(j)] >= 0) continue;
        const double d = std::abs(dot_row(r, j));
        if (d > best_mag) {
          best_mag = d;
          best = j;
        }
      }
      if (best < 0) continue;
      column_image(best, alpha);
      if (!pivot(r, best, alpha)) return;
    }
  }

  int m_;
  int first_artificial_;
  std::vector<int> basis_;
  std::vector<FloatColumn> cols_;
  std::vector<double> cost_;
  std::vector<double> rhs_;
  std::vector<int> position_;
  std::vector<double> binv_;
  std::vector<double> xb_;
  int iterations_ = 0;
  int since_reinvert_ = 0;
  long cap_ = 0;
};

/// Solves a square sparse rational system by Gaussian elimination with a sparsity-first pivot
/// choice. `rows[i]` lists (column, value) pairs of row i. Returns nullopt if singular.
std::optional<std::vector<Rational>> solve_sparse(std::vector<std::vector<std::pair<int, Rational>>> rows,
                                                  std::vector<Rational> rhs) {
  const int m = static_cast<int>(rows.size());
  for (auto& row : rows) {
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  std::vector<std::vector<int>> col_rows(static_cast<std::size_t>(m));
  std::vector<int> col_count(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < m; ++i) {
    for (const auto& [c, v] : rows[static_cast<std::size_t>(i)]) {
      col_rows[static_cast<std::size_t>(c)].push_back(i);
      ++col_count[static_cast<std::size_t>(c)];
    }
  }
  std::vector<char> row_done(static_cast<std::size_t>(m), 0);
  std::vector<char> col_done(static_cast<std::size_t>(m), 0);
  std::vector<std::pair<int, int>> order;
  order.reserve(static_cast<std::size_t>(m));
  auto find_entry = [&](int r, int c) -> Rational* {
    auto& row = rows[static_cast<std::size_t>(r)];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, int key) { return e.first < key; });
    if (it == row.end() || it->first != c) return nullptr;
    return &it->second;
  };
  Rational tmp;
  for (int step = 0; step < m; ++step) {
    int pr = -1;
    for (int i = 0; i < m; ++i) {
      if (row_done[static_cast<std::size_t>(i)]) continue;
      if (pr < 0 || rows[static_cast<std::size_t>(i)].size() < rows[static_cast<std::size_t>(pr)].size()) pr = i;
    }
    if (rows[static_cast<std::size_t>(pr)].empty()) return std::nullopt;
    int pc = -1;
    for (const auto& [c, v] : rows[static_cast<std::size_t>(pr)]) {
      if (pc < 0 || col_count[static_cast<std::size_t>(c)] < col_count[static_cast<std::size_t>(pc)]) pc = c;
    }
    row_done[static_cast<std::size_t>(pr)] = 1;
    col_done[static_cast<std::size_t>(pc)] = 1;
    order.emplace_back(pr, pc);
    const Rational pivot = *find_entry(pr, pc);
    const auto pivot_row = rows[static_cast<std::size_t>(pr)];
    for (const auto& [c, v] : pivot_row) --col_count[static_cast<std::size_t>(c)];
    std::vector<int> targets;
    for (int r : col_rows[static_cast<std::size_t>(pc)]) {
      if (!row_done[static_cast<std::size_t>(r)] && find_entry(r, pc) != nullptr) targets.push_back(r);
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (int r : targets) {
      auto& row = rows[static_cast<std::size_t>(r)];
      const Rational factor = *find_entry(r, pc) / pivot;
      std::vector<std::pair<int, Rational>> merged;
      merged.reserve(row.size() + pivot_row.size());
      std::size_t a = 0;
      std::size_t b = 0;
      while (a < row.size() || b < pivot_row.size()) {
        if (b == pivot_row.size() || (a < row.size() && row[a].first < pivot_row[b].first)) {
          merged.push_back(std::move(row[a]));
          ++a;
        } else if (a == row.size() || pivot_row[b].first < row[a].first) {
          mpq_mul(tmp.get_mpq_t(), factor.get_mpq_t(), pivot_row[b].second.get_mpq_t());
          merged.emplace_back(pivot_row[b].first, -tmp);
          col_rows[static_cast<std::size_t>(pivot_row[b].first)].push_back(r);
          ++col_count[static_cast<std::size_t>(pivot_row[b].first)];
          ++b;
        } else {
          Rational v = std::move(row[a].second);
          mpq_mul(tmp.get_mpq_t(), factor.get_mpq_t(), pivot_row[b].second.get_mpq_t());
          mpq_sub(v.get_mpq_t(), v.get_mpq_t(), tmp.get_mpq_t());
          if (sgn(v) != 0) {
            merged.emplace_back(row[a].first, std::move(v));
          } else {
            --col_count[static_cast<std::size_t>(row[a].first)];
          }
          ++a;
          ++b;
        }
      }
      row = std::move(merged);
      rhs[static_cast<std::size_t>(r)] -= factor * rhs[static_cast<std::size_t>(pr)];
    }
  }
  std::vector<Rational> x(static_cast<std::size_t>(m));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto [pr, pc] = *it;
    Rational sum = rhs[static_cast<std::size_t>(pr)];
    Rational diag;
    for (const auto& [c, v] : rows[static_cast<std::size_t>(pr)]) {
      if (c == pc) diag = v;
      else sum -= v * x[static_cast<std::size_t>(c)];
    }
    x[static_cast<std::size_t>(pc)] = sum / diag;
  }
  return x;
}

class RevisedSimplex {
 public:
  RevisedSimplex(const StandardForm& form, const SolveOptions& options) : form_(form), options_(options) {}

  EngineResult run() {
    const int m = form_.m;
    const int n = static_cast<int>(form_.cols.size());
    cols_ = form_.cols;
    basic_.assign(static_cast<std::size_t>(m), -1);

    // Initial basis from unit columns with +1 entry; artificials elsewhere.
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (int j = 0; j < n; ++j) {
      const auto& c = cols_[static_cast<std::size_t>(j)];
      if (c.rows.size() == 1 && c.vals[0] == 1 && basic_[static_cast<std::size_t>(c.rows[0])] < 0) {
        basic_[static_cast<std::size_t>(c.rows[0])] = j;
        used[static_cast<std::size_t>(j)] = 1;
      }
    }
    first_artificial_ = n;
    for (int i = 0; i < m; ++i) {
      if (basic_[static_cast<std::size_t>(i)] < 0) {
        cols_.push_back(SparseColumn{{i}, {Rational(1)}});
        basic_[static_cast<std::size_t>(i)] = static_cast<int>(cols_.size()) - 1;
      }
    }
    const int total = static_cast<int>(cols_.size());
    position_.assign(static_cast<std::size_t>(total), -1);
    for (int i = 0; i < m; ++i) position_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(i)])] = i;
    binv_.assign(static_cast<std::size_t>(m), SparseRow{});
    for (int i = 0; i < m; ++i) {
      binv_[static_cast<std::size_t>(i)].idx = {i};
      binv_[static_cast<std::size_t>(i)].val = {Rational(1)};
    }
    xb_ = form_.rhs;

    if (options_.float_warm_start && m > 0 && m <= 6000) {
      int float_iterations = 0;
      FloatSimplex fs(m, cols_, form_.cost, form_.rhs, n, basic_);
      if (auto basis = fs.run(float_iterations)) {
        if (auto certified = certify_basis(*basis, n)) {
          certified->iterations = float_iterations;
          certified->warm_started = true;
          return *certified;
        }
      }
    }

    EngineResult result;
    if (total > n) {
      std::vector<Rational> phase1(static_cast<std::size_t>(total), Rational(0));
      for (int j = n; j < total; ++j) phase1[static_cast<std::size_t>(j)] = 1;
      const bool bounded = iterate(phase1, total);
      if (!bounded) throw std::logic_error("phase 1 cannot be unbounded");
      Rational infeasibility = 0;
      for (int i = 0; i < m; ++i) {
        if (basic_[static_cast<std::size_t>(i)] >= n) infeasibility += xb_[static_cast<std::size_t>(i)];
      }
      if (sgn(infeasibility) > 0) {
        result.status = LpStatus::kInfeasible;
        result.iterations = iterations_;
        return result;
      }
      drive_out_artificials(n);
    }

    std::vector<Rational> cost(static_cast<std::size_t>(total), Rational(0));
    for (int j = 0; j < n; ++j) cost[static_cast<std::size_t>(j)] = form_.cost[static_cast<std::size_t>(j)];
    const bool bounded = iterate(cost, n);
    result.iterations = iterations_;
    if (!bounded) {
      result.status = LpStatus::kUnbounded;
      return result;
    }
    result.status = LpStatus::kOptimal;
    result.x.assign(static_cast<std::size_t>(n), Rational(0));
    for (int i = 0; i < m; ++i) {
      const int b = basic_[static_cast<std::size_t>(i)];
      if (b < n) result.x[static_cast<std::size_t>(b)] = xb_[static_cast<std::size_t>(i)];
    }
    result.pi = multipliers(cost);
    result.value = 0;
    for (int j = 0; j < n; ++j) result.value += form_.cost[static_cast<std::size_t>(j)] * result.x[static_cast<std::size_t>(j)];
    return result;
  }

 private:
  /// Exact primal and dual feasibility check of a proposed basis (artificials allowed at zero).
  std::optional<EngineResult> certify_basis(const std::vector<int>& basis, int n) const {
    const int m = form_.m;
    std::vector<std::vector<std::pair<int, Rational>>> rows(static_cast<std::size_t>(m));
    std::vector<std::vector<std::pair<int, Rational>>> trans(static_cast<std::size_t>(m));
    for (int p = 0; p < m; ++p) {
      const auto& c = cols_[static_cast<std::size_t>(basis[static_cast<std::size_t>(p)])];
      for (std::size_t k = 0; k < c.rows.size(); ++k) {
        rows[static_cast<std::size_t>(c.rows[k])].emplace_back(p, c.vals[k]);
        trans[static_cast<std::size_t>(p)].emplace_back(c.rows[k], c.vals[k]);
      }
    }
    auto xb = solve_sparse(std::move(rows), form_.rhs);
    if (!xb) return std::nullopt;
    EngineResult out;
    out.x.assign(static_cast<std::size_t>(n), Rational(0));
    for (int p = 0; p < m; ++p) {
      const Rational& v = (*xb)[static_cast<std::size_t>(p)];
      if (sgn(v) < 0) return std::nullopt;
      const int col = basis[static_cast<std::size_t>(p)];
      if (col >= n) {
        if (sgn(v) != 0) return std::nullopt;
      } else {
        out.x[static_cast<std::size_t>(col)] = v;
      }
    }
    std::vector<Rational> cb(static_cast<std::size_t>(m), Rational(0));
    for (int p = 0; p < m; ++p) {
      const int col = basis[static_cast<std::size_t>(p)];
      if (col < n) cb[static_cast<std::size_t>(p)] = form_.cost[static_cast<std::size_t>(col)];
    }
    auto pi = solve_sparse(std::move(trans), std::move(cb));
    if (!pi) return std::nullopt;
    Rational rc;
    Rational tmp;
    for (int j = 0; j < n; ++j) {
      reduced_cost(j, form_.cost, *pi, rc, tmp);
      if (sgn(rc) < 0) return std::nullopt;
    }
    out.status = LpStatus::kOptimal;
    out.pi = std::move(*pi);
    out.value = 0;
    for (int j = 0; j < n; ++j) out.value += form_.cost[static_cast<std::size_t>(j)] * out.x[static_cast<std::size_t>(j)];
    return out;
  }

  std::vector<Rational> multipliers(const std::vector<Rational>& cost) const {
    std::vector<Rational> pi(static_cast<std::size_t>(form_.m), Rational(0));
    Rational tmp;
    for (int i = 0; i < form_.m; ++i) {
      const Rational& cb = cost[static_cast<std::size_t>(basic_[static_cast<std::size_t>(i)])];
      if (sgn(cb) == 0) continue;
      const SparseRow& row = binv_[static_cast<std::size_t>(i)];
      for (std::size_t k = 0; k < row.idx.size(); ++k) {
        mpq_mul(tmp.get_mpq_t(), cb.get_mpq_t(), row.val[k].get_mpq_t());
        mpq_add(pi[static_cast<std::size_t>(row.idx[k])].get_mpq_t(), pi[static_cast<std::size_t>(row.idx[k])].get_mpq_t(),
                tmp.get_mpq_t());
      }
    }
    return pi;
  }

  void reduced_cost(int j, const std::vector<Rational>& cost, const std::vector<Rational>& pi, Rational& out,
                    Rational& tmp) const {
    out = cost[static_cast<std::size_t>(j)];
    const auto& c = cols_[static_cast<std::size_t>(j)];
    for (std::size_t k = 0; k < c.rows.size(); ++k) {
      const Rational& p = pi[static_cast<std::size_t>(c.rows[k])];
      if (sgn(p) == 0) continue;
      mpq_mul(tmp.get_mpq_t(), p.get_mpq_t(), c.vals[k].get_mpq_t());
      mpq_sub(out.get_mpq_t(), out.get_mpq_t(), tmp.get_mpq_t());
    }
  }

  /// alpha = B^-1 * column j; returns indices of nonzero entries.
  std::vector<int> column_image(int j, std::vector<Rational>& alpha) const {
    const auto& c = cols_[static_cast<std::size_t>(j)];
    std::vector<int> nz;
    Rational tmp;
    for (int i = 0; i < form_.m; ++i) {
      Rational& a = alpha[static_cast<std::size_t>(i)];
      a = 0;
      const SparseRow& row = binv_[static_cast<std::size_t>(i)];
      for (std::size_t k = 0; k < c.rows.size(); ++k) {
        const Rational* entry = row.find(c.rows[k]);
        if (entry == nullptr) continue;
        mpq_mul(tmp.get_mpq_t(), entry->get_mpq_t(), c.vals[k].get_mpq_t());
        mpq_add(a.get_mpq_t(), a.get_mpq_t(), tmp.get_mpq_t());
      }
      if (sgn(a) != 0) nz.push_back(i);
    }
    return nz;
  }

  void pivot(int r, int q, const std::vector<Rational>& alpha, const std::vector<int>& nz) {
    SparseRow& pivot_row = binv_[static_cast<std::size_t>(r)];
    const Rational pr = alpha[static_cast<std::size_t>(r)];
    for (auto& v : pivot_row.val) v /= pr;
    xb_[static_cast<std::size_t>(r)] /= pr;
    Rational tmp;
    for (int i : nz) {
      if (i == r) continue;
      const Rational& factor = alpha[static_cast<std::size_t>(i)];
      SparseRow& row = binv_[static_cast<std::size_t>(i)];
      SparseRow merged;
      merged.idx.reserve(row.idx.size() + pivot_row.idx.size());
      merged.val.reserve(row.idx.size() + pivot_row.idx.size());
      std::size_t a = 0;
      std::size_t b = 0;
      while (a < row.idx.size() || b < pivot_row.idx.size()) {
        if (b == pivot_row.idx.size() || (a < row.idx.size() && row.idx[a] < pivot_row.idx[b])) {
          merged.idx.push_back(row.idx[a]);
          merged.val.push_back(std::move(row.val[a]));
          ++a;
        } else {
          mpq_mul(tmp.get_mpq_t(), factor.get_mpq_t(), pivot_row.val[b].get_mpq_t());
          if (a < row.idx.size() && row.idx[a] == pivot_row.idx[b]) {
            Rational v = std::move(row.val[a]);
            mpq_sub(v.get_mpq_t(), v.get_mpq_t(), tmp.get_mpq_t());
            if (sgn(v) != 0) {
              merged.idx.push_back(row.idx[a]);
              merged.val.push_back(std::move(v));
            }
            ++a;
          } else {
            merged.idx.push_back(pivot_row.idx[b]);
            merged.val.push_back(-tmp);
          }
          ++b;
        }
      }
      row = std::move(merged);
      mpq_mul(tmp.get_mpq_t(), factor.get_mpq_t(), xb_[static_cast<std::size_t>(r)].get_mpq_t());
      mpq_sub(xb_[static_cast<std::size_t>(i)].get_mpq_t(), xb_[static_cast<std::size_t>(i)].get_mpq_t(), tmp.get_mpq_t());
    }
    position_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(r)])] = -1;
    basic_[static_cast<std::size_t>(r)] = q;
    position_[static_cast<std::size_t>(q)] = r;
    ++iterations_;
  }

  /// Runs simplex iterations over columns [0, allowed). Returns false on unboundedness.
  bool iterate(const std::vector<Rational>& cost, int allowed) {
    std::vector<Rational> pi = multipliers(cost);
    std::vector<Rational> alpha(static_cast<std::size_t>(form_.m));
    Rational rc;
    Rational best_rc;
    Rational tmp;
    int degenerate_run = 0;
    bool bland = options_.bland_only;
    for (;;) {
      int entering = -1;
      for (int j = 0; j < allowed; ++j) {
        if (position_[static_cast<std::size_t>(j)] >= 0) continue;
        reduced_cost(j, cost, pi, rc, tmp);
        if (sgn(rc) >= 0) continue;
        if (entering < 0 || rc < best_rc) {
          entering = j;
          best_rc = rc;
          if (bland) break;
        }
      }
      if (entering < 0) return true;

      const std::vector<int> nz = column_image(entering, alpha);
      int leaving = -1;
      Rational best_ratio;
      for (int i : nz) {
        if (sgn(alpha[static_cast<std::size_t>(i)]) <= 0) continue;
        Rational ratio = xb_[static_cast<std::size_t>(i)] / alpha[static_cast<std::size_t>(i)];
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basic_[static_cast<std::size_t>(i)] < basic_[static_cast<std::size_t>(leaving)])) {
          leaving = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving < 0) return false;

      if (sgn(best_ratio) == 0) {
        if (++degenerate_run > options_.degenerate_switch) bland = true;
      } else {
        degenerate_run = 0;
        bland = options_.bland_only;
      }
      const Rational entering_rc = best_rc;
      pivot(leaving, entering, alpha, nz);
      // pi' = pi + rc_q * (new row r of B^-1)
      const SparseRow& row = binv_[static_cast<std::size_t>(leaving)];
      for (std::size_t k = 0; k < row.idx.size(); ++k) {
        mpq_mul(tmp.get_mpq_t(), entering_rc.get_mpq_t(), row.val[k].get_mpq_t());
        mpq_add(pi[static_cast<std::size_t>(row.idx[k])].get_mpq_t(), pi[static_cast<std::size_t>(row.idx[k])].get_mpq_t(),
                tmp.get_mpq_t());
      }
    }
  }

  /// After phase 1, replaces zero-level artificial basics by structural columns where possible.
  void drive_out_artificials(int n) {
    std::vector<Rational> alpha(static_cast<std::size_t>(form_.m));
    for (int r = 0; r < form_.m; ++r) {
      if (basic_[static_cast<std::size_t>(r)] < n) continue;
      const SparseRow& row = binv_[static_cast<std::size_t>(r)];
      for (int j = 0; j < n; ++j) {
        if (position_[static_cast<std::size_t>(j)] >= 0) continue;
        const auto& c = cols_[static_cast<std::size_t>(j)];
        Rational dot = 0;
        for (std::size_t k = 0; k < c.rows.size(); ++k) {
          if (const Rational* e = row.find(c.rows[k])) dot += *e * c.vals[k];
        }
        if (sgn(dot) == 0) continue;
        const std::vector<int> nz = column_image(j, alpha);
        pivot(r, j, alpha, nz);
        break;
      }
    }
  }

  const StandardForm& form_;
  SolveOptions options_;
  std::vector<SparseColumn> cols_;
  std::vector<int> basic_;
  std::vector<int> position_;
  std::vector<SparseRow> binv_;
  std::vector<Rational> xb_;
  int first_artificial_ = 0;
  int iterations_ = 0;
};

// ---------------------------------------------------------------------------
// Reduction of an LpProblem to nonnegative columns.

struct ColumnMap {
  int var;
  int sign;  // +1 or -1 (negative part of a free variable)
};

struct Shifted {
  std::vector<ColumnMap> columns;
  std::vector<Rational> cost;  // per column
  // rows in column space
  std::vector<std::vector<std::pair<int, Rational>>> rows;
  std::vector<Relation> relations;
  std::vector<Rational> rhs;
  Rational cost_offset;
};

Shifted shift_problem(const LpProblem& p) {
  Shifted s;
  std::vector<int> pos_col(static_cast<std::size_t>(p.num_vars()));
  std::vector<int> neg_col(static_cast<std::size_t>(p.num_vars()), -1);
  for (int v = 0; v < p.num_vars(); ++v) {
    pos_col[static_cast<std::size_t>(v)] = static_cast<int>(s.columns.size());
    s.columns.push_back({v, 1});
    if (!p.lower_bound(v)) {
      neg_col[static_cast<std::size_t>(v)] = static_cast<int>(s.columns.size());
      s.columns.push_back({v, -1});
    }
  }
  s.cost.assign(s.columns.size(), Rational(0));
  s.cost_offset = 0;
  for (const auto& t : p.objective()) {
    s.cost[static_cast<std::size_t>(pos_col[static_cast<std::size_t>(t.var)])] = t.coef;
    if (neg_col[static_cast<std::size_t>(t.var)] >= 0) s.cost[static_cast<std::size_t>(neg_col[static_cast<std::size_t>(t.var)])] = -t.coef;
    if (const auto& lb = p.lower_bound(t.var)) s.cost_offset += t.coef * *lb;
  }
  for (const auto& row : p.rows()) {
    std::vector<std::pair<int, Rational>> cols;
    Rational rhs = row.rhs;
    for (const auto& t : row.terms) {
      cols.emplace_back(pos_col[static_cast<std::size_t>(t.var)], t.coef);
      if (neg_col[static_cast<std::size_t>(t.var)] >= 0) cols.emplace_back(neg_col[static_cast<std::size_t>(t.var)], -t.coef);
      if (const auto& lb = p.lower_bound(t.var)) rhs -= t.coef * *lb;
    }
    std::sort(cols.begin(), cols.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    s.rows.push_back(std::move(cols));
    s.relations.push_back(row.relation);
    s.rhs.push_back(std::move(rhs));
  }
  return s;
}

std::vector<Rational> assignment_from_columns(const LpProblem& p, const Shifted& s, const std::vector<Rational>& z) {
  std::vector<Rational> x(static_cast<std::size_t>(p.num_vars()), Rational(0));
  for (int v = 0; v < p.num_vars(); ++v) {
    if (const auto& lb = p.lower_bound(v)) x[static_cast<std::size_t>(v)] = *lb;
  }
  for (std::size_t c = 0; c < s.columns.size(); ++c) {
    const auto& map = s.columns[c];
    if (map.sign > 0) x[static_cast<std::size_t>(map.var)] += z[c];
    else x[static_cast<std::size_t>(map.var)] -= z[c];
  }
  return x;
}

struct RouteResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<Rational> z;      // column values
  std::vector<Rational> duals;  // per original row
  int iterations = 0;
  bool warm_started = false;
  bool ambiguous = false;  // dual route could not tell infeasible from unbounded
};

RouteResult solve_primal_route(const Shifted& s, const SolveOptions& options) {
  const int m = static_cast<int>(s.rows.size());
  const int n = static_cast<int>(s.columns.size());
  StandardForm form;
  form.m = m;
  form.cols.assign(static_cast<std::size_t>(n), SparseColumn{});
  form.cost = s.cost;
  form.rhs.resize(static_cast<std::size_t>(m));
  std::vector<int> flip(static_cast<std::size_t>(m), 1);
  for (int i = 0; i < m; ++i) {
    if (sgn(s.rhs[static_cast<std::size_t>(i)]) < 0) flip[static_cast<std::size_t>(i)] = -1;
    form.rhs[static_cast<std::size_t>(i)] = flip[static_cast<std::size_t>(i)] * s.rhs[static_cast<std::size_t>(i)];
    for (const auto& [col, coef] : s.rows[static_cast<std::size_t>(i)]) {
      form.cols[static_cast<std::size_t>(col)].rows.push_back(i);
      form.cols[static_cast<std::size_t>(col)].vals.push_back(flip[static_cast<std::size_t>(i)] * coef);
    }
  }
  for (int i = 0; i < m; ++i) {
    const Relation rel = s.relations[static_cast<std::size_t>(i)];
    if (rel == Relation::kEqual) continue;
    const int slack_sign = rel == Relation::kGreaterEqual ? -1 : 1;
    form.cols.push_back(SparseColumn{{i}, {Rational(slack_sign * flip[static_cast<std::size_t>(i)])}});
    form.cost.emplace_back(0);
  }
  RevisedSimplex engine(form, options);
  EngineResult er = engine.run();
  RouteResult out;
  out.status = er.status;
  out.iterations = er.iterations;
  out.warm_started = er.warm_started;
  if (er.status != LpStatus::kOptimal) return out;
  out.z.assign(er.x.begin(), er.x.begin() + n);
  out.duals.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) out.duals[static_cast<std::size_t>(i)] = flip[static_cast<std::size_t>(i)] * er.pi[static_cast<std::size_t>(i)];
  return out;
}

/// Solves the dual  max b·y  s.t.  A^T y <= c,  y_i >= 0 (>= rows), <= 0 (<= rows), free (= rows),
/// and reads the primal solution off the simplex multipliers.
RouteResult solve_dual_route(const Shifted& s, const SolveOptions& options) {
  const int m = static_cast<int>(s.rows.size());
  const int n = static_cast<int>(s.columns.size());
  StandardForm form;
  form.m = n;
  std::vector<int> flip(static_cast<std::size_t>(n), 1);
  for (int j = 0; j < n; ++j) {
    if (sgn(s.cost[static_cast<std::size_t>(j)]) < 0) flip[static_cast<std::size_t>(j)] = -1;
  }
  form.rhs.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) form.rhs[static_cast<std::size_t>(j)] = flip[static_cast<std::size_t>(j)] * s.cost[static_cast<std::size_t>(j)];

  struct DualColumn {
    int row;
    int sign;
  };
  std::vector<DualColumn> dual_cols;
  auto push_column = [&](int i, int sign) {
    SparseColumn col;
    for (const auto& [c, coef] : s.rows[static_cast<std::size_t>(i)]) {
      col.rows.push_back(c);
      col.vals.push_back(sign * flip[static_cast<std::size_t>(c)] * coef);
    }
    form.cols.push_back(std::move(col));
    form.cost.push_back(-sign * s.rhs[static_cast<std::size_t>(i)]);
    dual_cols.push_back({i, sign});
  };
  for (int i = 0; i < m; ++i) {
    switch (s.relations[static_cast<std::size_t>(i)]) {
      case Relation::kGreaterEqual: push_column(i, 1); break;
      case Relation::kLessEqual: push_column(i, -1); break;
      case Relation::kEqual:
        push_column(i, 1);
        push_column(i, -1);
        break;
    }
  }
  for (int j = 0; j < n; ++j) {
    form.cols.push_back(SparseColumn{{j}, {Rational(flip[static_cast<std::size_t>(j)])}});
    form.cost.emplace_back(0);
  }
  RevisedSimplex engine(form, options);
  EngineResult er = engine.run();
  RouteResult out;
  out.iterations = er.iterations;
  out.warm_started = er.warm_started;
  if (er.status == LpStatus::kUnbounded) {
    out.status = LpStatus::kInfeasible;  // dual unbounded => primal infeasible
    return out;
  }
  if (er.status == LpStatus::kInfeasible) {
    out.ambiguous = true;
    return out;
  }
  out.status = LpStatus::kOptimal;
  out.z.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) out.z[static_cast<std::size_t>(j)] = -flip[static_cast<std::size_t>(j)] * er.pi[static_cast<std::size_t>(j)];
  out.duals.assign(static_cast<std::size_t>(m), Rational(0));
  for (std::size_t k = 0; k < dual_cols.size(); ++k) {
    out.duals[static_cast<std::size_t>(dual_cols[k].row)] += dual_cols[k].sign * er.x[k];
  }
  return out;
}

}  // namespace

LpOptimum solve_min(const LpProblem& problem, const SolveOptions& options) {
  const Shifted shifted = shift_problem(problem);
  const bool use_dual = shifted.rows.size() > shifted.columns.size();
  RouteResult route = use_dual ? solve_dual_route(shifted, options) : solve_primal_route(shifted, options);
  LpOptimum out;
  out.route = use_dual ? "dual" : "primal";
  if (route.ambiguous) {
    const int spent = route.iterations;
    route = solve_primal_route(shifted, options);
    route.iterations += spent;
    out.route = "dual+primal";
  }
  out.iterations = route.iterations;
  out.warm_started = route.warm_started;
  out.status = route.status;
  if (route.status != LpStatus::kOptimal) return out;

  out.assignment = assignment_from_columns(problem, shifted, route.z);
  if (!check_feasible(problem, out.assignment).empty()) {
    throw std::logic_error("exact simplex produced an infeasible assignment");
  }
  out.value = evaluate_objective(problem, out.assignment);
  out.duals = std::move(route.duals);
  out.dual_certified = verify_dual_certificate(problem, out.duals, out.value);
  if (!out.dual_certified) throw std::logic_error("exact simplex optimum failed its duality check");
  return out;
}

std::vector<LpViolation> check_feasible(const LpProblem& problem, std::span<const Rational> assignment) {
  if (static_cast<int>(assignment.size()) != problem.num_vars()) {
    throw std::invalid_argument("assignment length does not match variable count");
  }
  std::vector<LpViolation> out;
  Rational lhs;
  for (std::size_t i = 0; i < problem.rows().size(); ++i) {
    const LpRow& row = problem.rows()[i];
    lhs = 0;
    for (const auto& t : row.terms) lhs += t.coef * assignment[static_cast<std::size_t>(t.var)];
    bool ok = true;
    switch (row.relation) {
      case Relation::kGreaterEqual: ok = lhs >= row.rhs; break;
      case Relation::kLessEqual: ok = lhs <= row.rhs; break;
      case Relation::kEqual: ok = lhs == row.rhs; break;
    }
    if (!ok) out.push_back({LpViolation::Kind::kRow, i});
  }
  for (int v = 0; v < problem.num_vars(); ++v) {
    const auto& lb = problem.lower_bound(v);
    if (lb && assignment[static_cast<std::size_t>(v)] < *lb) out.push_back({LpViolation::Kind::kLowerBound, static_cast<std::size_t>(v)});
  }
  return out;
}

Rational evaluate_objective(const LpProblem& problem, std::span<const Rational> assignment) {
  Rational value = 0;
  for (const auto& t : problem.objective()) value += t.coef * assignment[static_cast<std::size_t>(t.var)];
  return value;
}

bool verify_dual_certificate(const LpProblem& problem, std::span<const Rational> duals, const Rational& value) {
  if (duals.size() != problem.rows().size()) return false;
  std::vector<Rational> reduced(static_cast<std::size_t>(problem.num_vars()), Rational(0));
  for (const auto& t : problem.objective()) reduced[static_cast<std::size_t>(t.var)] = t.coef;
  Rational bound = 0;
  for (std::size_t i = 0; i < duals.size(); ++i) {
    const LpRow& row = problem.rows()[i];
    const Rational& y = duals[i];
    if (row.relation == Relation::kGreaterEqual && sgn(y) < 0) return false;
    if (row.relation == Relation::kLessEqual && sgn(y) > 0) return false;
    if (sgn(y) == 0) continue;
    bound += y * row.rhs;
    for (const auto& t : row.terms) reduced[static_cast<std::size_t>(t.var)] -= y * t.coef;
  }
  for (int v = 0; v < problem.num_vars(); ++v) {
    const Rational& d = reduced[static_cast<std::size_t>(v)];
    const auto& lb = problem.lower_bound(v);
    if (!lb) {
      if (sgn(d) != 0) return false;
    } else {
      if (sgn(d) < 0) return false;
      bound += d * *lb;
    }
  }
  return bound == value;
}

}  // namespace bcrate
