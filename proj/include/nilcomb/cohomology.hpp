#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilcomb/combinatorics.hpp"
#include "nilcomb/config.hpp"
#include "nilcomb/exterior.hpp"
#include "nilcomb/lie.hpp"
#include "nilcomb/parallel.hpp"
#include "nilcomb/rank.hpp"

namespace nilcomb {

/// Integer coefficients indexed by degree, trailing zeros trimmed.
/// Holds Betti sequences, basic Betti sequences and independence polynomials.
struct GradedPolynomial {
  std::vector<long long> coeffs;

  GradedPolynomial() = default;
  explicit GradedPolynomial(std::vector<long long> c) : coeffs(std::move(c)) { trim(); }

  void trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  long long at(int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs.size())) ? coeffs[k] : 0;
  }

  friend bool operator==(const GradedPolynomial& a, const GradedPolynomial& b) {
    return a.coeffs == b.coeffs;
  }

  /// "1 + 4t + 5t^2"
  std::string to_string(char var = 't') const {
    if (coeffs.empty()) return "0";
    std::string out;
    for (int k = 0; k < static_cast<int>(coeffs.size()); ++k) {
      if (coeffs[k] == 0) continue;
      if (!out.empty()) out += " + ";
      if (k == 0) {
        out += std::to_string(coeffs[k]);
        continue;
      }
      if (coeffs[k] != 1) out += std::to_string(coeffs[k]);
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
    return out.empty() ? "0" : out;
  }
};

/// Indices (1-based) of y*-generators whose wedge survives in basic
/// cohomology.
struct IndependentSet {
  std::vector<int> indices;
};

/// Basis data of an abelian subalgebra: the chosen y's plus all of [g, g].
struct AbelianSubalgebra {
  std::vector<int> y_indices;
  int commutator_dim = 0;

  int dimension() const { return static_cast<int>(y_indices.size()) + commutator_dim; }
};

/// Chevalley-Eilenberg differential as a first-order operator:
/// d = sum_k d(z_k*) . d/dz_k*. Input lives over the b + c generators
/// (y* first, then z*).
inline ExteriorPoly<Rational> cce_differential(const TwoStepAlgebra& alg,
                                               const ExteriorPoly<Rational>& p) {
  const int d = alg.dim();
  if (p.generators() != d)
    throw ValidationError("cce_differential: polynomial must live over b + c generators");
  ExteriorPoly<Rational> out(d);
  for (int k = 1; k <= alg.c; ++k) {
    const ExteriorPoly<Rational> dz = alg.z_differential(k, d);
    if (dz.is_zero()) continue;
    const ExteriorPoly<Rational> inner = interior_derivative(p, alg.b + k - 1);
    if (inner.is_zero()) continue;
    out += wedge(dz, inner);
  }
  return out;
}

namespace detail {

/// Rank of d restricted to the degree-k slice of the full complex.
inline int full_differential_rank(const TwoStepAlgebra& alg, int k) {
  const int d = alg.dim();
  if (k < 0 || k > d) return 0;
  SparseEchelon echelon;
  // z-free monomials are killed by d; only masks touching a z* contribute.
  for_each_mask(d, k, [&](Mask m) {
    if (alg.b >= 64 || (m >> alg.b) == 0) return;
    const auto poly =
        cce_differential(alg, ExteriorPoly<Rational>::monomial(d, m, Rational(1)));
    if (!poly.is_zero()) echelon.insert(to_int_row(poly));
  });
  return echelon.rank();
}

/// Echelonized span of the degree-k boundaries d(z_j* m), m of degree k - 2
/// in the y* variables only. Build once, test membership many times.
inline SparseEchelon boundary_echelon(const TwoStepAlgebra& alg, int k) {
  SparseEchelon echelon;
  if (k < 2) return echelon;
  std::vector<ExteriorPoly<Rational>> z_forms;
  for (int j = 1; j <= alg.c; ++j) z_forms.push_back(alg.z_differential(j, alg.b));
  for (int j = 0; j < alg.c; ++j) {
    if (z_forms[j].is_zero()) continue;
    for_each_mask(alg.b, k - 2, [&](Mask m) {
      const auto boundary = wedge(
          z_forms[j], ExteriorPoly<Rational>::monomial(alg.b, m, Rational(1)));
      if (!boundary.is_zero()) echelon.insert(to_int_row(boundary));
    });
  }
  return echelon;
}

}  // namespace detail

/// b^k(g) = dim H^k of the full complex, by exact ranks:
/// C(d, k) - rank(d_k) - rank(d_{k-1}).
inline int betti(const TwoStepAlgebra& alg, int k, const Caps& caps = {}) {
  const int d = alg.dim();
  if (k < 0 || k > d) throw ValidationError("betti degree out of range");
  if (d > caps.exact_full)
    throw CapExceeded("full-complex cap " + std::to_string(caps.exact_full) +
                      " exceeded (dim " + std::to_string(d) + ")");
  const long long dim_k = binomial_ll(d, k);
  const int rank_k = detail::full_differential_rank(alg, k);
  const int rank_km1 = detail::full_differential_rank(alg, k - 1);
  return static_cast<int>(dim_k - rank_k - rank_km1);
}

/// b_B^k(g) = C(b, k) - dim span{ d(z_j* m) }, the basic Betti number.
inline int basic_betti(const TwoStepAlgebra& alg, int k, const Caps& caps = {}) {
  if (k < 0 || k > alg.b) throw ValidationError("basic_betti degree out of range");
  if (alg.b > caps.exact_degree)
    throw CapExceeded("single-degree cap " + std::to_string(caps.exact_degree) +
                      " exceeded (b = " + std::to_string(alg.b) + ")");
  const long long dim_k = binomial_ll(alg.b, k);
  return static_cast<int>(dim_k - detail::boundary_echelon(alg, k).rank());
}

/// Largest k with b_B^k != 0, scanned top-down (high degrees vanish early).
inline int independence_number(const TwoStepAlgebra& alg, const Caps& caps = {}) {
  for (int k = alg.b; k >= 1; --k)
    if (basic_betti(alg, k, caps) > 0) return k;
  return 0;  // b_B^0 = 1 always
}

/// I(g, t) = sum_k b_B^k t^k up to its degree alpha(g).
inline GradedPolynomial independence_polynomial(const TwoStepAlgebra& alg,
                                                const Caps& caps = {}, int jobs = 1) {
  const int alpha = independence_number(alg, caps);
  std::vector<long long> coeffs(alpha + 1, 0);
  parallel_for_index(alpha + 1, jobs,
                     [&](int k) { coeffs[k] = basic_betti(alg, k, caps); });
  return GradedPolynomial(std::move(coeffs));
}

/// Lexicographically smallest index set S of size alpha(g) whose monomial
/// det(S) avoids the degree-alpha boundary span. Existence is guaranteed.
inline IndependentSet find_max_independent_set(const TwoStepAlgebra& alg,
                                               const Caps& caps = {}) {
  const int alpha = independence_number(alg, caps);
  if (alpha == 0) return {};
  const SparseEchelon boundaries = detail::boundary_echelon(alg, alpha);
  IndependentSet result;
  for_each_combination_lex(alg.b, alpha, [&](const std::vector<int>& idx) {
    SparseIntRow row;
    row.entries.emplace_back(mask_from_indices(idx), Integer(1));
    if (boundaries.contains(std::move(row))) return false;
    result.indices.reserve(idx.size());
    for (int i : idx) result.indices.push_back(i + 1);
    return true;
  });
  if (static_cast<int>(result.indices.size()) != alpha)
    throw InternalError("no independent set of size alpha found; this contradicts "
                        "the least-terms argument and indicates a bug");
  return result;
}

/// Abelian subalgebra of dimension alpha(g) + d - b: an independent set with
/// pairwise-vanishing brackets, direct-summed with [g, g]. The search walks
/// maximum independent candidates in lexicographic order, checking brackets
/// first (cheap) and cohomological independence second.
inline AbelianSubalgebra max_abelian_subalgebra(const TwoStepAlgebra& alg,
                                                const Caps& caps = {}) {
  const int alpha = independence_number(alg, caps);
  if (alpha == 0) return {{}, alg.c};
  const SparseEchelon boundaries = detail::boundary_echelon(alg, alpha);
  AbelianSubalgebra result;
  result.commutator_dim = alg.c;
  bool found = false;
  for_each_combination_lex(alg.b, alpha, [&](const std::vector<int>& idx) {
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b2 = a + 1; b2 < idx.size(); ++b2)
        for (int k = 1; k <= alg.c; ++k)
          if (!is_zero(alg.structure_constant(idx[a] + 1, idx[b2] + 1, k)))
            return false;
    SparseIntRow row;
    row.entries.emplace_back(mask_from_indices(idx), Integer(1));
    if (boundaries.contains(std::move(row))) return false;
    for (int i : idx) result.y_indices.push_back(i + 1);
    found = true;
    return true;
  });
  if (!found)
    throw InternalError(
        "exhausted all maximum independent sets without finding one with "
        "pairwise-vanishing brackets; logged as a potential implementation bug");
  // Direct abelianness check of the returned basis.
  for (std::size_t a = 0; a < result.y_indices.size(); ++a)
    for (std::size_t b2 = a + 1; b2 < result.y_indices.size(); ++b2)
      for (int k = 1; k <= alg.c; ++k)
        if (!is_zero(alg.structure_constant(result.y_indices[a], result.y_indices[b2], k)))
          throw InternalError("abelian candidate has a nonvanishing bracket");
  return result;
}

}  // namespace nilcomb
