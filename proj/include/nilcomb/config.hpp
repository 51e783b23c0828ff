#pragma once

#include "nilcomb/errors.hpp"

namespace nilcomb {

/// Size caps for the expensive paths. Exceeding a cap raises CapExceeded;
/// nothing is ever silently truncated.
struct Caps {
  int exact_full = 20;         // generators for full-complex (all-degree) exact work
  int exact_degree = 26;       // generators for single-degree exact work
  int spectral = 14;           // first Betti number for dense eigensolves
  int graph_combinatorial = 20;  // vertices for the combinatorial partition function
  int graph_enum = 24;         // vertices for brute-force independent-set enumeration
  int trinks_vertices = 8;     // vertex cap for subgraph-sum enumeration
  int trinks_edges = 12;       // edge cap for subgraph-sum enumeration

  void set_all(int value) {
    exact_full = exact_degree = spectral = value;
    graph_combinatorial = graph_enum = value;
    trinks_vertices = trinks_edges = value;
  }
};

struct Tolerances {
  double zero = 1e-8;     // |eigenvalue| below zero * max(1, norm) counts as 0
  double cluster = 1e-8;  // relative gap that starts a new eigenvalue cluster
  double ortho = 1e-12;   // accepted residual on orthonormalization

  void check() const {
    if (!(zero > 0 && zero < 1e-2) || !(cluster > 0 && cluster < 1e-2))
      throw ValidationError("tolerances must lie in (0, 1e-2)");
  }
};

}  // namespace nilcomb
