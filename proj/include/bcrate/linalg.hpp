#pragma once

#include <optional>
#include <vector>

namespace bcrate {

/// Dense matrix over a prime field; entries kept in [0, p).
using FieldMatrix = std::vector<std::vector<int>>;

bool is_prime(int value);
/// Smallest prime strictly greater than `value`.
int next_prime_above(int value);
/// Multiplicative inverse of a nonzero element of F_p.
int field_inverse(int a, int p);
/// Reduces an arbitrary integer into [0, p).
inline int field_mod(long long a, int p) {
  const long long r = a % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

int rank_mod(FieldMatrix m, int p);

/// Indices of rows forming a basis of the row space, chosen greedily in index order.
std::vector<int> basis_rows(const FieldMatrix& m, int p);

/// Coefficients c with sum_i c[i] * rows[i] == target, or nullopt when target is outside the row span.
std::optional<std::vector<int>> express_in_rows(const FieldMatrix& rows, const std::vector<int>& target, int p);

}  // namespace bcrate
