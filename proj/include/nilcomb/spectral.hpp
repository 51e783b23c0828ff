#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "nilcomb/cohomology.hpp"
#include "nilcomb/config.hpp"
#include "nilcomb/graph.hpp"
#include "nilcomb/lie.hpp"
#include "nilcomb/linalg.hpp"
#include "nilcomb/parallel.hpp"

namespace nilcomb {

/// A 2-step algebra with a positive-definite inner product on the adapted
/// basis. No block structure is assumed: off-diagonal y-z entries are fine.
struct MetricPair {
  TwoStepAlgebra alg;
  RationalMatrix gram;
};

inline MetricPair make_metric_pair(TwoStepAlgebra alg, RationalMatrix gram) {
  const int d = alg.dim();
  if (static_cast<int>(gram.size()) != d)
    throw ValidationError("gram matrix must be " + std::to_string(d) + " x " +
                          std::to_string(d));
  for (const auto& row : gram)
    if (static_cast<int>(row.size()) != d)
      throw ValidationError("gram matrix must be square");
  if (!rational_is_symmetric(gram)) throw ValidationError("gram matrix not symmetric");
  if (!rational_is_positive_definite(gram))
    throw ValidationError("gram matrix not positive definite");
  return {std::move(alg), std::move(gram)};
}

inline MetricPair identity_metric(TwoStepAlgebra alg) {
  const int d = alg.dim();
  return {std::move(alg), rational_identity(d)};
}

/// Orthonormal frame adapted to the splitting: the last c vectors span
/// [g, g] exactly (Gram-Schmidt runs inside the ideal first, then on its
/// g-orthogonal complement), with the bracket rewritten in that frame.
struct OrthonormalFrame {
  Eigen::MatrixXd basis;                      // column j = frame vector j
  std::vector<ExteriorPoly<double>> z_forms;  // d(v_k*) over the b y-generators
  double residual = 0;                        // max |B^T G B - I|
};

inline OrthonormalFrame orthonormalize_adapted(const MetricPair& mp,
                                               double tol = 1e-12) {
  const int d = mp.alg.dim();
  const int b = mp.alg.b;
  const int c = mp.alg.c;
  Eigen::MatrixXd G(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) G(i, j) = mp.gram[i][j].get_d();

  auto inner = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    return x.dot(G * y);
  };

  // Candidate order: the ideal's basis vectors first, then the y's; two
  // modified Gram-Schmidt passes keep the residual at roundoff level.
  Eigen::MatrixXd frame(d, d);
  int placed = 0;
  auto place = [&](Eigen::VectorXd v) {
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < placed; ++j) v -= inner(frame.col(j), v) * frame.col(j);
    const double norm = std::sqrt(inner(v, v));
    if (!(norm > 0)) throw InternalError("orthonormalization met a null vector");
    frame.col(placed++) = v / norm;
  };
  for (int k = 0; k < c; ++k) place(Eigen::VectorXd::Unit(d, b + k));
  for (int i = 0; i < b; ++i) place(Eigen::VectorXd::Unit(d, i));

  // Reorder so the complement comes first and the ideal frame last.
  Eigen::MatrixXd ordered(d, d);
  ordered.leftCols(b) = frame.rightCols(b);
  ordered.rightCols(c) = frame.leftCols(c);

  OrthonormalFrame out;
  out.basis = ordered;
  const Eigen::MatrixXd gramian = ordered.transpose() * G * ordered;
  out.residual = (gramian - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (out.residual > tol)
    throw InternalError("orthonormality residual " + std::to_string(out.residual) +
                        " exceeds tolerance");

  // Brackets of the new y-frame, expressed in the new z-frame. Only the
  // y-components of frame vectors bracket: [g, g] is central.
  Eigen::MatrixXd z_block(c, c);
  for (int k = 0; k < c; ++k) z_block.col(k) = ordered.col(b + k).tail(c);
  Eigen::FullPivLU<Eigen::MatrixXd> z_solver(z_block);
  if (!z_solver.isInvertible())
    throw InternalError("ideal frame is degenerate");

  out.z_forms.assign(c, ExteriorPoly<double>(b));
  for (int p = 0; p < b; ++p) {
    for (int q = p + 1; q < b; ++q) {
      Eigen::VectorXd w = Eigen::VectorXd::Zero(c);
      for (const auto& [pair, coeffs] : mp.alg.gamma) {
        const int i = pair.first - 1, j = pair.second - 1;
        const double anti = ordered(i, p) * ordered(j, q) - ordered(j, p) * ordered(i, q);
        if (anti == 0.0) continue;
        for (int k = 0; k < c; ++k) w(k) += anti * coeffs[k].get_d();
      }
      if (w.isZero(0.0)) continue;
      const Eigen::VectorXd tilde = z_solver.solve(w);
      const Mask m = (Mask{1} << p) | (Mask{1} << q);
      for (int k = 0; k < c; ++k) out.z_forms[k].add_term(m, tilde(k));
    }
  }
  return out;
}

namespace detail {

inline std::unordered_map<Mask, int> degree_index(int b, int k) {
  std::unordered_map<Mask, int> index;
  int next = 0;
  for_each_mask(b, k, [&](Mask m) { index.emplace(m, next++); });
  return index;
}

}  // namespace detail

/// Matrix of Delta_B = sum_k d(z_k*) (adjoint pair) on the orthonormal
/// degree-k monomial basis; symmetric positive semidefinite.
inline Eigen::MatrixXd basic_laplacian_matrix(const TwoStepAlgebra& alg,
                                              const OrthonormalFrame& frame, int k) {
  const int b = alg.b;
  if (k < 0 || k > b) throw ValidationError("laplacian degree out of range");
  const long long n = binomial_ll(b, k);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  if (k < 2) return out;
  const auto index = detail::degree_index(b, k);
  for (const auto& [m, col] : index) {
    ExteriorPoly<double> image(b);
    for (const auto& zf : frame.z_forms) {
      // D = sum_{i<j} gamma~_{ij} d/dy_j d/dy_i applied to the monomial m.
      ExteriorPoly<double> lowered(b);
      for (const auto& [pm, coeff] : zf.terms()) {
        if ((pm & m) != pm) continue;
        const int i = std::countr_zero(pm);
        const int j = std::countr_zero(pm ^ (Mask{1} << i));
        const int s = position_in(m, i) + position_in(m ^ (Mask{1} << i), j);
        lowered.add_term(m ^ pm, (s % 2 == 0) ? coeff : -coeff);
      }
      if (lowered.is_zero()) continue;
      image += wedge(zf, lowered);
    }
    for (const auto& [im, v] : image.terms()) out(index.at(im), col) = v;
  }
  return 0.5 * (out + out.transpose().eval());
}

inline Eigen::MatrixXd basic_laplacian_matrix(const MetricPair& mp, int k,
                                              const Tolerances& tol = {}) {
  return basic_laplacian_matrix(mp.alg, orthonormalize_adapted(mp, tol.ortho), k);
}

/// One spectral line of Z(s, t): `multiplicity` states of the given degree
/// at the given energy. exact_energy is set when the producing path knew the
/// energy as an exact integer.
struct PartitionTerm {
  double energy = 0;
  std::optional<std::string> exact_energy;
  int degree = 0;
  long long multiplicity = 0;
};

struct PartitionFunction {
  std::vector<PartitionTerm> terms;  // sorted by (degree, energy)

  /// Coefficients of Z(0, t): zero-energy multiplicity per degree.
  GradedPolynomial zero_energy_polynomial(double zero_tol = 1e-8) const {
    std::vector<long long> coeffs;
    for (const auto& t : terms) {
      if (std::abs(t.energy) > zero_tol) continue;
      if (static_cast<int>(coeffs.size()) <= t.degree) coeffs.resize(t.degree + 1, 0);
      coeffs[t.degree] += t.multiplicity;
    }
    return GradedPolynomial(std::move(coeffs));
  }

  /// Coefficients of Z(1, t): total multiplicity per degree.
  GradedPolynomial degree_totals() const {
    std::vector<long long> coeffs;
    for (const auto& t : terms) {
      if (static_cast<int>(coeffs.size()) <= t.degree) coeffs.resize(t.degree + 1, 0);
      coeffs[t.degree] += t.multiplicity;
    }
    return GradedPolynomial(std::move(coeffs));
  }

  /// "1 + 4t + 5t^2 + s^2 t^2 + ..." (energies shown as printed doubles when
  /// not exact integers).
  std::string to_string() const {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& t : terms) {
      std::string piece;
      if (t.multiplicity != 1 || (t.energy == 0 && t.degree == 0))
        piece += std::to_string(t.multiplicity);
      if (t.energy != 0) {
        piece += "s";
        std::string e;
        if (t.exact_energy) {
          e = *t.exact_energy;
        } else {
          std::ostringstream os;
          os << t.energy;
          e = os.str();
        }
        if (e != "1") piece += "^" + e;
      }
      if (t.degree > 0) {
        piece += "t";
        if (t.degree > 1) piece += "^" + std::to_string(t.degree);
      }
      out += out.empty() ? piece : " + " + piece;
    }
    return out;
  }
};

/// Eigendecomposition of the basic Laplacian per degree, eigenvalues
/// clustered into multiplicities.
inline PartitionFunction partition_function(const MetricPair& mp, const Caps& caps = {},
                                            const Tolerances& tol = {}, int jobs = 1) {
  const int b = mp.alg.b;
  if (b > caps.spectral)
    throw CapExceeded("spectral cap " + std::to_string(caps.spectral) +
                      " exceeded (b = " + std::to_string(b) + ")");
  const OrthonormalFrame frame = orthonormalize_adapted(mp, tol.ortho);
  std::vector<std::vector<PartitionTerm>> by_degree(b + 1);
  parallel_for_index(b + 1, jobs, [&](int k) {
    const Eigen::MatrixXd a = basic_laplacian_matrix(mp.alg, frame, k);
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success)
      throw InternalError("eigensolver failed to converge in degree " + std::to_string(k));
    const Eigen::VectorXd ev = solver.eigenvalues();
    if (ev.size() > 0 && ev(0) < -tol.zero * scale)
      throw InternalError("basic Laplacian is not positive semidefinite");
    int i = 0;
    while (i < ev.size()) {
      int j = i;
      double sum = 0;
      while (j < ev.size() && ev(j) - ev(i) <= tol.cluster * scale) sum += ev(j++);
      double energy = sum / (j - i);
      if (std::abs(energy) <= tol.zero * scale) energy = 0;
      by_degree[k].push_back({energy, std::nullopt, k, j - i});
      i = j;
    }
  });
  PartitionFunction out;
  for (auto& terms : by_degree)
    out.terms.insert(out.terms.end(), terms.begin(), terms.end());
  return out;
}

/// Z for a Dani-Mainkar algebra with the canonical metric, computed
/// combinatorially: the monomial basis diagonalizes the Laplacian and the
/// energy of a k-subset is its induced edge count.
inline PartitionFunction graph_partition_function(const Graph& g, const Caps& caps = {}) {
  if (g.n > caps.graph_combinatorial)
    throw CapExceeded("combinatorial cap " + std::to_string(caps.graph_combinatorial) +
                      " exceeded (n = " + std::to_string(g.n) + ")");
  const auto adj = g.adjacency_masks();
  std::map<std::pair<int, long long>, long long> counts;  // (degree, edges) -> count
  const std::uint64_t limit = g.n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.n);
  for (std::uint64_t s = 0; s < limit; ++s) {
    long long edges = 0;
    for (std::uint64_t rest = s; rest;) {
      const int v = std::countr_zero(rest);
      rest &= rest - 1;
      edges += std::popcount(adj[v] & s);
    }
    counts[{std::popcount(s), edges / 2}] += 1;
  }
  PartitionFunction out;
  for (const auto& [key, mult] : counts)
    out.terms.push_back({static_cast<double>(key.second), std::to_string(key.second),
                         key.first, mult});
  return out;
}

/// Spectrum of the Johnson graph J(n, k): eigenvalue (k-j)(n-k-j) - j with
/// multiplicity C(n, j) - C(n, j-1), for j = 0..min(k, n-k).
inline std::vector<std::pair<long long, long long>> johnson_spectrum(int n, int k) {
  if (k < 0 || k > n) throw ValidationError("johnson_spectrum requires 0 <= k <= n");
  std::vector<std::pair<long long, long long>> out;
  const int top = std::min(k, n - k);
  for (int j = 0; j <= top; ++j) {
    const long long theta = static_cast<long long>(k - j) * (n - k - j) - j;
    const long long mult = binomial_ll(n, j) - binomial_ll(n, j - 1);
    out.emplace_back(theta, mult);
  }
  return out;
}

/// Z_{h_n, h} in closed form: states are products of m "paired" factors on a
/// degree-k unpaired core, with Johnson-graph energies.
inline PartitionFunction heisenberg_partition_closed_form(int n) {
  if (n < 1) throw ValidationError("heisenberg index must be >= 1");
  std::map<std::pair<int, long long>, Integer> counts;  // (degree, energy) -> mult
  for (int k = 0; k <= n; ++k) {
    for (int m = 0; m <= n - k; ++m) {
      for (int j = 0; j <= std::min(m, n - k - m); ++j) {
        Integer mult;
        if (j == 0) {
          mult = (Integer(1) << k) * binomial(n, k);
        } else {
          // 2^k * multinomial(n; k, j, n-k-j) * (n-k-2j+1) / (n-k-j+1)
          Integer numer = (Integer(1) << k) * binomial(n, k) * binomial(n - k, j) *
                          Integer(n - k - 2 * j + 1);
          Integer denom(n - k - j + 1);
          Integer q, r;
          mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), numer.get_mpz_t(), denom.get_mpz_t());
          if (sgn(r) != 0) throw InternalError("non-integer closed-form multiplicity");
          mult = q;
        }
        if (sgn(mult) <= 0) continue;
        const long long energy =
            static_cast<long long>(m - j) * (n - k - m - j + 1);
        counts[{2 * m + k, energy}] += mult;
      }
    }
  }
  PartitionFunction out;
  for (const auto& [key, mult] : counts) {
    if (!mult.fits_slong_p()) throw CapExceeded("multiplicity exceeds 64 bits");
    out.terms.push_back({static_cast<double>(key.second), std::to_string(key.second),
                         key.first, mult.get_si()});
  }
  return out;
}

/// Term-by-term agreement: per degree, the multiset of eigenvalues (expanded
/// with multiplicity) must match within `tol`.
inline bool partition_functions_match(const PartitionFunction& a,
                                      const PartitionFunction& b, double tol,
                                      std::string* why = nullptr) {
  std::map<int, std::vector<std::pair<double, long long>>> da, db;
  for (const auto& t : a.terms) da[t.degree].emplace_back(t.energy, t.multiplicity);
  for (const auto& t : b.terms) db[t.degree].emplace_back(t.energy, t.multiplicity);
  auto degrees = da;
  for (const auto& [k, v] : db) degrees.try_emplace(k);
  for (const auto& [k, unused] : degrees) {
    std::vector<double> ea, eb;
    for (const auto& [e, m] : da[k]) ea.insert(ea.end(), m, e);
    for (const auto& [e, m] : db[k]) eb.insert(eb.end(), m, e);
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    if (ea.size() != eb.size()) {
      if (why)
        *why = "degree " + std::to_string(k) + ": state counts differ (" +
               std::to_string(ea.size()) + " vs " + std::to_string(eb.size()) + ")";
      return false;
    }
    for (std::size_t i = 0; i < ea.size(); ++i) {
      if (std::abs(ea[i] - eb[i]) >
          tol * std::max({1.0, std::abs(ea[i]), std::abs(eb[i])})) {
        if (why)
          *why = "degree " + std::to_string(k) + ": energy " + std::to_string(ea[i]) +
                 " vs " + std::to_string(eb[i]);
        return false;
      }
    }
  }
  return true;
}

}  // namespace nilcomb
