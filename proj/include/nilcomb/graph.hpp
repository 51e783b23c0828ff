#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nilcomb/errors.hpp"

namespace nilcomb {

/// Finite simple graph. Vertices are 1..n; edges are stored as (i, j) with
/// i < j in lexicographic order, which fixes the edge -> z-generator map.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  Graph() = default;
  explicit Graph(int vertex_count) : n(vertex_count) {
    if (vertex_count < 0) throw ValidationError("negative vertex count");
  }

  void add_edge(int i, int j) {
    if (i == j) throw ValidationError("loop edge " + std::to_string(i));
    if (i > j) std::swap(i, j);
    if (i < 1 || j > n)
      throw ValidationError("edge endpoint out of range: " + std::to_string(i) +
                            " " + std::to_string(j));
    const auto e = std::make_pair(i, j);
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it != edges.end() && *it == e)
      throw ValidationError("duplicate edge " + std::to_string(i) + " " +
                            std::to_string(j));
    edges.insert(it, e);
  }

  bool has_edge(int i, int j) const {
    if (i > j) std::swap(i, j);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
  }

  int edge_count() const { return static_cast<int>(edges.size()); }

  /// adj[v] has bit w set when {v+1, w+1} is an edge (0-based masks).
  std::vector<std::uint64_t> adjacency_masks() const {
    std::vector<std::uint64_t> adj(n, 0);
    for (const auto& [i, j] : edges) {
      adj[i - 1] |= std::uint64_t{1} << (j - 1);
      adj[j - 1] |= std::uint64_t{1} << (i - 1);
    }
    return adj;
  }
};

inline Graph path_graph(int n) {
  Graph g(n);
  for (int i = 1; i < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph cycle_graph(int n) {
  Graph g = path_graph(n);
  if (n >= 3) g.add_edge(n, 1);
  return g;
}

inline Graph complete_graph(int n) {
  Graph g(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) g.add_edge(i, j);
  return g;
}

inline Graph empty_graph(int n) { return Graph(n); }

/// Graph with the given 0-based edge bitmask over the C(n,2) pair slots in
/// lexicographic order; used for exhaustive labeled-graph sweeps.
inline Graph graph_from_edge_bits(int n, std::uint64_t bits) {
  Graph g(n);
  int slot = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j, ++slot)
      if (bits >> slot & 1) g.add_edge(i, j);
  return g;
}

}  // namespace nilcomb
