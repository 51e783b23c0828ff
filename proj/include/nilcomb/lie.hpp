#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilcomb/exterior.hpp"
#include "nilcomb/graph.hpp"
#include "nilcomb/linalg.hpp"
#include "nilcomb/rank.hpp"
#include "nilcomb/rational.hpp"

namespace nilcomb {

/// 2-step nilpotent Lie algebra over an adapted basis {y_1..y_b, z_1..z_c}:
/// [y_i, y_j] = sum_k gamma(i,j,k) z_k, every bracket involving a z vanishes.
/// The stored c never overstates dim[g,g]: the c x C(b,2) matrix of
/// structure constants has full row rank (checked by make_two_step and
/// guaranteed by the constructions below).
struct TwoStepAlgebra {
  int b = 0;
  int c = 0;
  // (i, j) with 1 <= i < j <= b  ->  length-c coefficient vector.
  // Pairs whose vector is entirely zero are omitted.
  std::map<std::pair<int, int>, std::vector<Rational>> gamma;
  std::vector<std::string> basis_names;  // optional, size b + c when present

  int dim() const { return b + c; }

  /// gamma^k_{i,j} with antisymmetry in (i, j); k is 1-based.
  Rational structure_constant(int i, int j, int k) const {
    if (i == j) return Rational(0);
    int sign = 1;
    if (i > j) {
      std::swap(i, j);
      sign = -1;
    }
    auto it = gamma.find({i, j});
    if (it == gamma.end()) return Rational(0);
    Rational v = it->second[k - 1];
    return sign < 0 ? Rational(-v) : v;
  }

  /// d(z_k*) = sum_{i<j} gamma^k_{i,j} y_i* y_j*, over `generators` >= b
  /// generators (pass dim() for the full complex, b for the basic one).
  ExteriorPoly<Rational> z_differential(int k, int generators) const {
    ExteriorPoly<Rational> out(generators);
    for (const auto& [pair, coeffs] : gamma) {
      const Rational& v = coeffs[k - 1];
      if (is_zero(v)) continue;
      const Mask m = (Mask{1} << (pair.first - 1)) | (Mask{1} << (pair.second - 1));
      out.add_term(m, v);
    }
    return out;
  }
};

/// Checks shape and the full-row-rank invariant, then assembles the algebra.
inline TwoStepAlgebra make_two_step(
    int b, int c, std::map<std::pair<int, int>, std::vector<Rational>> gamma,
    std::vector<std::string> basis_names = {}) {
  if (b < 0 || c < 0) throw ValidationError("negative dimension data");
  for (auto it = gamma.begin(); it != gamma.end();) {
    const auto& [i, j] = it->first;
    if (i < 1 || i >= j || j > b)
      throw ValidationError("bad bracket pair (" + std::to_string(i) + ", " +
                            std::to_string(j) + ")");
    if (static_cast<int>(it->second.size()) != c)
      throw ValidationError("bracket coefficient vector must have length c");
    bool all_zero = true;
    for (const auto& v : it->second) all_zero = all_zero && is_zero(v);
    it = all_zero ? gamma.erase(it) : std::next(it);
  }
  // Row k of the structure-constant matrix, keyed by the pair (i, j).
  SparseEchelon echelon;
  for (int k = 1; k <= c; ++k) {
    SparseIntRow int_row;
    std::map<Mask, Rational> entries;
    for (const auto& [pair, coeffs] : gamma)
      if (!is_zero(coeffs[k - 1]))
        entries[Mask(pair.first) << 32 | Mask(pair.second)] = coeffs[k - 1];
    Integer lcm = 1;
    for (const auto& [m, v] : entries)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
    for (const auto& [m, v] : entries)
      int_row.entries.emplace_back(m, Integer(v.get_num() * (lcm / v.get_den())));
    if (!echelon.insert(std::move(int_row)))
      throw ValidationError(
          "structure constants do not span a commutator ideal of dimension " +
          std::to_string(c));
  }
  TwoStepAlgebra alg;
  alg.b = b;
  alg.c = c;
  alg.gamma = std::move(gamma);
  alg.basis_names = std::move(basis_names);
  return alg;
}

/// Bracket table over an arbitrary basis: brackets[(i, j)] is the coefficient
/// vector of [e_i, e_j], 1-based, length dim. Orientations not stored are
/// implied by antisymmetry; storing both lets inconsistencies be detected.
struct RawAlgebra {
  int dim = 0;
  std::map<std::pair<int, int>, std::vector<Rational>> brackets;

  std::vector<Rational> bracket(int i, int j) const {
    if (auto it = brackets.find({i, j}); it != brackets.end()) return it->second;
    if (auto it = brackets.find({j, i}); it != brackets.end()) {
      std::vector<Rational> v = it->second;
      for (auto& x : v) x = -x;
      return v;
    }
    return std::vector<Rational>(dim, Rational(0));
  }
};

struct ValidationReport {
  bool ok = true;
  std::string message;
  std::array<int, 3> triple{0, 0, 0};  // first violating (i, j, k) when not ok
};

/// Confirms the bilinear extension of the table is antisymmetric and
/// satisfies [x, [y, z]] = 0 on all basis triples.
inline ValidationReport validate_two_step(const RawAlgebra& raw) {
  const int d = raw.dim;
  for (const auto& [pair, v] : raw.brackets) {
    const auto& [i, j] = pair;
    if (i < 1 || i > d || j < 1 || j > d)
      return {false, "bracket index out of range", {i, j, 0}};
    if (static_cast<int>(v.size()) != d)
      return {false, "bracket vector has wrong length", {i, j, 0}};
    if (i == j) {
      for (const auto& x : v)
        if (!is_zero(x)) return {false, "non-antisymmetric table: [e_i, e_i] != 0", {i, i, 0}};
    }
    if (auto rev = raw.brackets.find({j, i}); i != j && rev != raw.brackets.end()) {
      for (int k = 0; k < d; ++k)
        if (v[k] != -rev->second[k])
          return {false, "non-antisymmetric table", {i, j, 0}};
    }
  }
  // [e_i, [e_j, e_k]] = sum_l w_l [e_i, e_l] with w = [e_j, e_k].
  for (const auto& [pair, unused] : raw.brackets) {
    const auto& [j, k] = pair;
    const std::vector<Rational> w = raw.bracket(j, k);
    for (int i = 1; i <= d; ++i) {
      std::vector<Rational> acc(d, Rational(0));
      for (int l = 1; l <= d; ++l) {
        if (is_zero(w[l - 1])) continue;
        const std::vector<Rational> bil = raw.bracket(i, l);
        for (int t = 0; t < d; ++t)
          if (!is_zero(bil[t])) acc[t] += w[l - 1] * bil[t];
      }
      for (const auto& x : acc)
        if (!is_zero(x))
          return {false,
                  "not 2-step nilpotent: [e_" + std::to_string(i) + ", [e_" +
                      std::to_string(j) + ", e_" + std::to_string(k) + "]] != 0",
                  {i, j, k}};
    }
  }
  return {};
}

struct AdaptResult {
  TwoStepAlgebra algebra;
  RationalMatrix transition;  // column j = adapted basis vector j in old coords
};

/// Adapts a validated raw algebra: the commutator ideal gets the canonical
/// (reduced row echelon) basis of the span of all bracket vectors, the
/// complement is filled greedily with standard unit vectors in index order,
/// and the structure constants are rewritten in the new basis.
inline AdaptResult adapt_basis(const RawAlgebra& raw) {
  const ValidationReport report = validate_two_step(raw);
  if (!report.ok) throw ValidationError("adapt_basis: " + report.message);
  const int d = raw.dim;

  RationalMatrix span;
  for (const auto& [pair, unused] : raw.brackets) {
    std::vector<Rational> v = raw.bracket(pair.first, pair.second);
    bool nonzero = false;
    for (const auto& x : v) nonzero = nonzero || !is_zero(x);
    if (nonzero) span.push_back(std::move(v));
  }
  const int c = rational_rref(span);
  span.resize(c);  // canonical z-basis rows
  const int b = d - c;

  // Greedy completion by unit vectors: e_i joins the y-basis unless it is
  // already dependent on the z-basis plus the y's chosen so far.
  RationalMatrix probe = span;
  std::vector<int> y_positions;
  for (int i = 1; i <= d && static_cast<int>(y_positions.size()) < b; ++i) {
    RationalMatrix trial = probe;
    trial.emplace_back(d, Rational(0));
    trial.back()[i - 1] = 1;
    if (rational_rref(trial) > static_cast<int>(probe.size())) {
      probe = std::move(trial);
      y_positions.push_back(i);
    }
  }
  if (static_cast<int>(y_positions.size()) != b)
    throw InternalError("basis completion failed");

  RationalMatrix transition(d, std::vector<Rational>(d, Rational(0)));
  for (int col = 0; col < b; ++col) transition[y_positions[col] - 1][col] = 1;
  for (int col = 0; col < c; ++col)
    for (int r = 0; r < d; ++r) transition[r][b + col] = span[col][r];
  const auto inverse = rational_inverse(transition);
  if (!inverse) throw InternalError("transition matrix not invertible");

  std::map<std::pair<int, int>, std::vector<Rational>> gamma;
  for (int p = 1; p <= b; ++p) {
    for (int q = p + 1; q <= b; ++q) {
      const std::vector<Rational> v = raw.bracket(y_positions[p - 1], y_positions[q - 1]);
      std::vector<Rational> coords = rational_apply(*inverse, v);
      for (int t = 0; t < b; ++t)
        if (!is_zero(coords[t]))
          throw InternalError("bracket escaped the commutator ideal");
      std::vector<Rational> tail(coords.begin() + b, coords.end());
      bool nonzero = false;
      for (const auto& x : tail) nonzero = nonzero || !is_zero(x);
      if (nonzero) gamma[{p, q}] = std::move(tail);
    }
  }
  return {make_two_step(b, c, std::move(gamma)), std::move(transition)};
}

/// Dani-Mainkar algebra of a simple graph: one y per vertex, one z per edge
/// in lexicographic edge order, [y_i, y_j] = z_{(i,j)} exactly on edges.
inline TwoStepAlgebra dani_mainkar(const Graph& g) {
  std::map<std::pair<int, int>, std::vector<Rational>> gamma;
  const int c = g.edge_count();
  int index = 0;
  std::vector<std::string> names;
  for (int v = 1; v <= g.n; ++v) names.push_back("x" + std::to_string(v));
  for (const auto& [i, j] : g.edges) {
    std::vector<Rational> coeffs(c, Rational(0));
    coeffs[index++] = 1;
    gamma[{i, j}] = std::move(coeffs);
    names.push_back("z" + std::to_string(i) + "_" + std::to_string(j));
  }
  return make_two_step(g.n, c, std::move(gamma), std::move(names));
}

/// Heisenberg algebra h_n: dim 2n + 1, [y_i, y_{i+n}] = z for i = 1..n.
inline TwoStepAlgebra heisenberg(int n) {
  if (n < 1) throw ValidationError("heisenberg index must be >= 1");
  std::map<std::pair<int, int>, std::vector<Rational>> gamma;
  for (int i = 1; i <= n; ++i) gamma[{i, i + n}] = {Rational(1)};
  std::vector<std::string> names;
  for (int i = 1; i <= 2 * n; ++i) names.push_back("y" + std::to_string(i));
  names.push_back("z");
  return make_two_step(2 * n, 1, std::move(gamma), std::move(names));
}

/// Rebuilds the raw bracket table of an adapted algebra (identity basis).
inline RawAlgebra to_raw(const TwoStepAlgebra& alg) {
  RawAlgebra raw;
  raw.dim = alg.dim();
  for (const auto& [pair, coeffs] : alg.gamma) {
    std::vector<Rational> v(raw.dim, Rational(0));
    for (int k = 0; k < alg.c; ++k) v[alg.b + k] = coeffs[k];
    raw.brackets[pair] = std::move(v);
  }
  return raw;
}

/// The same algebra expressed in the basis f_j = sum_i T[i][j] e_i.
/// T must be invertible.
inline RawAlgebra apply_basis_change(const TwoStepAlgebra& alg, const RationalMatrix& T) {
  const int d = alg.dim();
  const auto inverse = rational_inverse(T);
  if (!inverse) throw ValidationError("basis change matrix is singular");
  RawAlgebra out;
  out.dim = d;
  for (int p = 1; p <= d; ++p) {
    for (int q = p + 1; q <= d; ++q) {
      // [f_p, f_q] in e-coordinates; only y-components of f bracket.
      std::vector<Rational> e_coords(d, Rational(0));
      for (const auto& [pair, coeffs] : alg.gamma) {
        const auto& [i, j] = pair;
        const Rational anti = T[i - 1][p - 1] * T[j - 1][q - 1] -
                              T[j - 1][p - 1] * T[i - 1][q - 1];
        if (is_zero(anti)) continue;
        for (int k = 0; k < alg.c; ++k)
          if (!is_zero(coeffs[k])) e_coords[alg.b + k] += anti * coeffs[k];
      }
      std::vector<Rational> f_coords = rational_apply(*inverse, e_coords);
      bool nonzero = false;
      for (const auto& x : f_coords) nonzero = nonzero || !is_zero(x);
      if (nonzero) out.brackets[{p, q}] = std::move(f_coords);
    }
  }
  return out;
}

}  // namespace nilcomb
