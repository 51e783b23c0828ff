#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "nilcomb/cohomology.hpp"
#include "nilcomb/config.hpp"
#include "nilcomb/graph.hpp"

namespace nilcomb {

/// Integer polynomial in (q, r, s, t); keys are exponent tuples.
struct MultiPoly {
  std::map<std::array<int, 4>, long long> terms;

  void add(std::array<int, 4> exps, long long coeff) {
    if (coeff == 0) return;
    auto it = terms.find(exps);
    if (it == terms.end()) {
      terms.emplace(exps, coeff);
    } else {
      it->second += coeff;
      if (it->second == 0) terms.erase(it);
    }
  }

  /// Substitutes integer values for q, r, s (with 0^0 = 1) and collects the
  /// result as a polynomial in t.
  GradedPolynomial specialize_to_t(long long q, long long r, long long s) const {
    auto powi = [](long long base, int e) {
      long long acc = 1;
      for (int i = 0; i < e; ++i) acc *= base;
      return acc;
    };
    std::vector<long long> coeffs;
    for (const auto& [exps, coeff] : terms) {
      const long long v = coeff * powi(q, exps[0]) * powi(r, exps[1]) * powi(s, exps[2]);
      if (v == 0) continue;
      if (static_cast<int>(coeffs.size()) <= exps[3]) coeffs.resize(exps[3] + 1, 0);
      coeffs[exps[3]] += v;
    }
    return GradedPolynomial(std::move(coeffs));
  }

  /// Substitutes q and r only, collecting coefficients by (s, t) exponents.
  std::map<std::pair<int, int>, long long> collapse_qr(long long q, long long r) const {
    auto powi = [](long long base, int e) {
      long long acc = 1;
      for (int i = 0; i < e; ++i) acc *= base;
      return acc;
    };
    std::map<std::pair<int, int>, long long> out;
    for (const auto& [exps, coeff] : terms) {
      const long long v = coeff * powi(q, exps[0]) * powi(r, exps[1]);
      if (v == 0) continue;
      auto key = std::make_pair(exps[2], exps[3]);
      out[key] += v;
      if (out[key] == 0) out.erase(key);
    }
    return out;
  }
};

/// Number of connected components of the subgraph (vertices, edges);
/// isolated vertices count as components.
inline int connected_components(const std::vector<int>& vertices,
                                const std::vector<std::pair<int, int>>& edges) {
  std::map<int, int> slot;
  for (int v : vertices) slot.emplace(v, static_cast<int>(slot.size()));
  std::vector<int> parent(slot.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = static_cast<int>(slot.size());
  for (const auto& [a, b] : edges) {
    auto ia = slot.find(a), ib = slot.find(b);
    if (ia == slot.end() || ib == slot.end())
      throw ValidationError("edge endpoint outside the vertex subset");
    const int ra = find(ia->second), rb = find(ib->second);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components;
}

/// s_k(G) for all k by subset enumeration with adjacency-bitmask pruning;
/// the degree of the result is alpha(G).
inline GradedPolynomial brute_force_independence(const Graph& g, const Caps& caps = {}) {
  if (g.n > caps.graph_enum)
    throw CapExceeded("enumeration cap " + std::to_string(caps.graph_enum) +
                      " exceeded (n = " + std::to_string(g.n) + ")");
  std::vector<long long> counts(g.n + 1, 0);
  counts[0] = 1;  // empty set
  const auto adj = g.adjacency_masks();
  const std::uint64_t limit = std::uint64_t{1} << g.n;
  std::vector<bool> independent(static_cast<std::size_t>(limit), false);
  independent[0] = true;
  for (std::uint64_t s = 1; s < limit; ++s) {
    const int v = std::countr_zero(s);
    const std::uint64_t rest = s & (s - 1);
    if (independent[rest] && (adj[v] & rest) == 0) {
      independent[s] = true;
      ++counts[std::popcount(s)];
    }
  }
  return GradedPolynomial(std::move(counts));
}

/// Generalized subgraph counting polynomial: the sum over vertex subsets U
/// and edge subsets A of E(G[U]) of q^{k(H)} r^{|A|} s^{|E(G[U])|} t^{|U|},
/// with H = (U, A). The s-exponent depends only on U, so the inner sum over
/// A is computed per subset.
inline MultiPoly trinks_polynomial(const Graph& g, const Caps& caps = {}) {
  if (g.n > caps.trinks_vertices || g.edge_count() > caps.trinks_edges)
    throw CapExceeded("subgraph enumeration caps (" +
                      std::to_string(caps.trinks_vertices) + " vertices, " +
                      std::to_string(caps.trinks_edges) + " edges) exceeded");
  MultiPoly out;
  const std::uint64_t vlimit = std::uint64_t{1} << g.n;
  for (std::uint64_t u = 0; u < vlimit; ++u) {
    std::vector<int> vertices;
    for (int v = 1; v <= g.n; ++v)
      if (u >> (v - 1) & 1) vertices.push_back(v);
    std::vector<std::pair<int, int>> induced;
    for (const auto& e : g.edges)
      if ((u >> (e.first - 1) & 1) && (u >> (e.second - 1) & 1)) induced.push_back(e);
    const int eu = static_cast<int>(induced.size());
    const std::uint64_t elimit = std::uint64_t{1} << eu;
    for (std::uint64_t a = 0; a < elimit; ++a) {
      std::vector<std::pair<int, int>> chosen;
      for (int i = 0; i < eu; ++i)
        if (a >> i & 1) chosen.push_back(induced[i]);
      const int k = connected_components(vertices, chosen);
      out.add({k, static_cast<int>(chosen.size()), eu, static_cast<int>(vertices.size())}, 1);
    }
  }
  return out;
}

}  // namespace nilcomb
