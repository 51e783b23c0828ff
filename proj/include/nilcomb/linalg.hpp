#pragma once

#include <optional>
#include <vector>

#include "nilcomb/errors.hpp"
#include "nilcomb/rational.hpp"

namespace nilcomb {

/// Dense row-major rational matrix. Only used at basis scale (d x d), where
/// plain Gauss-Jordan over mpq is plenty.
using RationalMatrix = std::vector<std::vector<Rational>>;

inline RationalMatrix rational_identity(int n) {
  RationalMatrix m(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline RationalMatrix rational_multiply(const RationalMatrix& a, const RationalMatrix& b) {
  const int n = static_cast<int>(a.size());
  const int k = n ? static_cast<int>(a[0].size()) : 0;
  const int m = k ? static_cast<int>(b[0].size()) : 0;
  RationalMatrix out(n, std::vector<Rational>(m, Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) {
      if (is_zero(a[i][j])) continue;
      for (int l = 0; l < m; ++l) out[i][l] += a[i][j] * b[j][l];
    }
  return out;
}

inline std::vector<Rational> rational_apply(const RationalMatrix& m,
                                            const std::vector<Rational>& v) {
  std::vector<Rational> out(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!is_zero(m[i][j]) && !is_zero(v[j])) out[i] += m[i][j] * v[j];
  return out;
}

/// In-place reduced row echelon form; returns the rank. Pivots are scanned
/// column by column, normalized to 1, and cleared above and below, so the
/// nonzero rows form the canonical basis of the row space.
inline int rational_rref(RationalMatrix& m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (!is_zero(m[r][col])) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    const Rational inv = 1 / m[rank][col];
    for (int c = col; c < cols; ++c) m[rank][c] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || is_zero(m[r][col])) continue;
      const Rational f = m[r][col];
      for (int c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

inline std::optional<RationalMatrix> rational_inverse(const RationalMatrix& m) {
  const int n = static_cast<int>(m.size());
  RationalMatrix aug(n, std::vector<Rational>(2 * n, Rational(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  if (rational_rref(aug) != n) return std::nullopt;
  RationalMatrix inv(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

inline Rational rational_determinant(RationalMatrix m) {
  const int n = static_cast<int>(m.size());
  Rational det(1);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (!is_zero(m[r][col])) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Rational(0);
    if (pivot != col) {
      std::swap(m[col], m[pivot]);
      det = -det;
    }
    det *= m[col][col];
    const Rational inv = 1 / m[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (is_zero(m[r][col])) continue;
      const Rational f = m[r][col] * inv;
      for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

inline bool rational_is_symmetric(const RationalMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (m[i][j] != m[j][i]) return false;
  return true;
}

/// Sylvester's criterion, exactly: every leading principal minor positive.
inline bool rational_is_positive_definite(const RationalMatrix& m) {
  const int n = static_cast<int>(m.size());
  for (int k = 1; k <= n; ++k) {
    RationalMatrix lead(k, std::vector<Rational>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) lead[i][j] = m[i][j];
    if (sgn(rational_determinant(std::move(lead))) <= 0) return false;
  }
  return true;
}

}  // namespace nilcomb
