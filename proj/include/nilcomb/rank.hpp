#pragma once

#include <map>
#include <utility>
#include <vector>

#include "nilcomb/exterior.hpp"
#include "nilcomb/rational.hpp"

namespace nilcomb {

/// A sparse integer row: (column key, nonzero entry) pairs with strictly
/// ascending keys. Stored rows are primitive (entry gcd 1, leading entry > 0).
struct SparseIntRow {
  std::vector<std::pair<Mask, Integer>> entries;

  bool empty() const { return entries.empty(); }
  Mask lead() const { return entries.front().first; }
};

namespace detail {

inline void strip_content(SparseIntRow& row) {
  if (row.entries.empty()) return;
  Integer g = 0;
  for (const auto& [c, v] : row.entries) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (sgn(row.entries.front().second) < 0) g = -g;
  if (g == 1) return;
  for (auto& [c, v] : row.entries) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    v = q;
  }
}

/// row := a * row - b * pivot, merging sorted entry lists.
inline SparseIntRow combine(const SparseIntRow& row, const Integer& a,
                            const SparseIntRow& pivot, const Integer& b) {
  SparseIntRow out;
  out.entries.reserve(row.entries.size() + pivot.entries.size());
  auto r = row.entries.begin();
  auto p = pivot.entries.begin();
  while (r != row.entries.end() || p != pivot.entries.end()) {
    if (p == pivot.entries.end() || (r != row.entries.end() && r->first < p->first)) {
      out.entries.emplace_back(r->first, Integer(a * r->second));
      ++r;
    } else if (r == row.entries.end() || p->first < r->first) {
      out.entries.emplace_back(p->first, Integer(-b * p->second));
      ++p;
    } else {
      Integer v = a * r->second - b * p->second;
      if (sgn(v) != 0) out.entries.emplace_back(r->first, std::move(v));
      ++r, ++p;
    }
  }
  return out;
}

}  // namespace detail

/// Incremental exact echelon form over the integers. Elimination is
/// fraction-free: rows are cross-multiplied and stripped to primitive form,
/// so every intermediate value stays an integer. Insertion order is the
/// caller's, which keeps results deterministic.
class SparseEchelon {
 public:
  /// Reduces `row` against the stored pivots; if something survives it
  /// becomes a new pivot. Returns true when the rank grew.
  bool insert(SparseIntRow row) {
    reduce(row);
    if (row.empty()) return false;
    detail::strip_content(row);
    const Mask lead = row.lead();
    pivots_.emplace(lead, std::move(row));
    return true;
  }

  /// True when `row` lies in the span of the inserted rows.
  bool contains(SparseIntRow row) const {
    reduce(row);
    return row.empty();
  }

  int rank() const { return static_cast<int>(pivots_.size()); }

 private:
  void reduce(SparseIntRow& row) const {
    while (!row.empty()) {
      auto it = pivots_.find(row.lead());
      if (it == pivots_.end()) return;
      const SparseIntRow& pivot = it->second;
      row = detail::combine(row, pivot.entries.front().second, pivot,
                            row.entries.front().second);
      detail::strip_content(row);
    }
  }

  std::map<Mask, SparseIntRow> pivots_;
};

/// Clears denominators and strips content: the primitive integer row with
/// the same span as the rational polynomial.
inline SparseIntRow to_int_row(const ExteriorPoly<Rational>& p) {
  SparseIntRow row;
  if (p.is_zero()) return row;
  Integer lcm = 1;
  for (const auto& [m, c] : p.terms())
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  row.entries.reserve(p.terms().size());
  for (const auto& [m, c] : p.terms()) {
    Integer v = c.get_num() * (lcm / c.get_den());
    row.entries.emplace_back(m, std::move(v));
  }
  detail::strip_content(row);
  return row;
}

/// Dimension of the span of homogeneous degree-k polynomials, by exact
/// fraction-free elimination over the sparse monomial basis.
inline int rank_of_span(const std::vector<ExteriorPoly<Rational>>& vectors, int k) {
  SparseEchelon echelon;
  for (const auto& v : vectors) {
    if (!v.is_homogeneous(k))
      throw ValidationError("rank_of_span requires homogeneous degree-" +
                            std::to_string(k) + " input");
    echelon.insert(to_int_row(v));
  }
  return echelon.rank();
}

}  // namespace nilcomb
