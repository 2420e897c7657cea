#include "bcrate/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace bcrate {

bool is_prime(int value) {
  if (value < 2) return false;
  for (int d = 2; d * d <= value; ++d) {
    if (value % d == 0) return false;
  }
  return true;
}

int next_prime_above(int value) {
  int p = value < 1 ? 2 : value + 1;
  while (!is_prime(p)) ++p;
  return p;
}

int field_inverse(int a, int p) {
  a = field_mod(a, p);
  if (a == 0) throw std::domain_error("zero has no inverse");
  // Extended Euclid.
  long long t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    const long long q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return field_mod(t, p);
}

namespace {

// Row-reduces in place and returns the pivot columns, one per independent row.
std::vector<int> eliminate(FieldMatrix& m, int p) {
  std::vector<int> pivots;
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    const int inv = field_inverse(m[r][c], p);
    for (auto& v : m[r]) v = static_cast<int>(static_cast<long long>(v) * inv % p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const long long f = m[i][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] = field_mod(m[i][k] - f * m[r][k], p);
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

}  // namespace

int rank_mod(FieldMatrix m, int p) {
  for (auto& row : m) {
    for (auto& v : row) v = field_mod(v, p);
  }
  return static_cast<int>(eliminate(m, p).size());
}

std::vector<int> basis_rows(const FieldMatrix& m, int p) {
  std::vector<int> chosen;
  FieldMatrix reduced;
  int rank = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    reduced.push_back(m[i]);
    for (auto& v : reduced.back()) v = field_mod(v, p);
    const int r = rank_mod(reduced, p);
    if (r > rank) {
      rank = r;
      chosen.push_back(static_cast<int>(i));
    } else {
      reduced.pop_back();
    }
  }
  return chosen;
}

std::optional<std::vector<int>> express_in_rows(const FieldMatrix& rows, const std::vector<int>& target, int p) {
  // Solve c^T R = t, i.e. R^T c = t, via the augmented system [R^T | t].
  const std::size_t k = rows.size();
  const std::size_t width = target.size();
  FieldMatrix aug(width, std::vector<int>(k + 1, 0));
  for (std::size_t j = 0; j < width; ++j) {
    for (std::size_t i = 0; i < k; ++i) aug[j][i] = field_mod(rows[i].at(j), p);
    aug[j][k] = field_mod(target[j], p);
  }
  const std::vector<int> pivots = eliminate(aug, p);
  std::vector<int> coef(k, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (static_cast<std::size_t>(pivots[r]) == k) return std::nullopt;  // inconsistent
    coef[static_cast<std::size_t>(pivots[r])] = aug[r][k];
  }
  return coef;
}

}  // namespace bcrate
