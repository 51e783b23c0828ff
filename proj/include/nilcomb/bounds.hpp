#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "nilcomb/errors.hpp"
#include "nilcomb/graph.hpp"
#include "nilcomb/rational.hpp"

namespace nilcomb {

enum class BoundCase { abelian, corank_one, general };

inline const char* to_string(BoundCase c) {
  switch (c) {
    case BoundCase::abelian: return "abelian";
    case BoundCase::corank_one: return "corank-one";
    default: return "general";
  }
}

namespace detail {

inline void check_dims(long long d, long long b) {
  if (b < 1 || b > d)
    throw ValidationError("bounds require 1 <= b <= d (got b = " + std::to_string(b) +
                          ", d = " + std::to_string(d) + ")");
}

/// Q = 1 + 4(b^2 + b - 2d), the discriminant under the upper-bound radical.
/// Negative only when d - b exceeds C(b, 2), which no 2-step algebra attains.
inline Integer upper_discriminant(long long d, long long b) {
  const Integer bb = to_integer(b);
  Integer q = 1 + 4 * (bb * bb + bb - 2 * to_integer(d));
  if (sgn(q) < 0)
    throw ValidationError("invalid input: dim - b exceeds C(b, 2), impossible for a "
                          "2-step nilpotent Lie algebra");
  return q;
}

inline Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

}  // namespace detail

/// Upper bound 1/2 + sqrt(1/4 + b^2 + b - 2d) on the independence number.
inline double upper_bound(long long d, long long b) {
  detail::check_dims(d, b);
  const Integer q = detail::upper_discriminant(d, b);
  return 0.5 + std::sqrt(q.get_d()) / 2.0;
}

/// Exact floor of the upper bound: the largest integer f with
/// (2f - 1)^2 <= Q (f >= 1 always, since Q >= 1).
inline long long upper_bound_floor(long long d, long long b) {
  detail::check_dims(d, b);
  const Integer q = detail::upper_discriminant(d, b);
  Integer f = (1 + detail::isqrt(q)) / 2;
  while ((2 * (f + 1) - 1) * (2 * (f + 1) - 1) <= q) ++f;
  while (f >= 1 && (2 * f - 1) * (2 * f - 1) > q) --f;
  return f.get_si();
}

/// Lower bound on the independence number, with its case split:
/// d < b + 1 (abelian): exactly d; d = b + 1: (d - 1) / 2; otherwise
/// [sqrt(4(d-b-1)(b^2+b) + (d+b+1)^2) - (d+b+1)] / [2(d-b-1)].
inline std::pair<double, BoundCase> lower_bound(long long d, long long b) {
  detail::check_dims(d, b);
  if (d < b + 1) return {static_cast<double>(d), BoundCase::abelian};
  if (d == b + 1) return {(d - 1) / 2.0, BoundCase::corank_one};
  const Integer bb = to_integer(b), dd = to_integer(d);
  const Integer m = 4 * (dd - bb - 1) * (bb * bb + bb) + (dd + bb + 1) * (dd + bb + 1);
  const double value =
      (std::sqrt(m.get_d()) - static_cast<double>(d + b + 1)) / (2.0 * (d - b - 1));
  return {value, BoundCase::general};
}

/// Exact ceiling of the lower bound.
inline long long lower_bound_ceil(long long d, long long b) {
  detail::check_dims(d, b);
  if (d < b + 1) return d;
  if (d == b + 1) return d / 2;  // ceil((d - 1) / 2)
  const Integer bb = to_integer(b), dd = to_integer(d);
  const Integer m = 4 * (dd - bb - 1) * (bb * bb + bb) + (dd + bb + 1) * (dd + bb + 1);
  const Integer denom = 2 * (dd - bb - 1);
  const Integer shift = dd + bb + 1;
  // smallest g >= 0 with (denom * g + shift)^2 >= m
  Integer g = (detail::isqrt(m) - shift) / denom;
  if (sgn(g) < 0) g = 0;
  auto ok = [&](const Integer& x) {
    const Integer lhs = denom * x + shift;
    return sgn(lhs) >= 0 && lhs * lhs >= m;
  };
  while (!ok(g)) ++g;
  while (g > 0 && ok(g - 1)) --g;
  return g.get_si();
}

/// Turan-type lower and Hansen upper bound on the graph independence number.
inline std::pair<double, double> graph_bounds(const Graph& g) {
  if (g.n < 1) throw ValidationError("graph bounds require at least one vertex");
  const long long n = g.n;
  const long long e = g.edge_count();
  const double lower = static_cast<double>(n) * n / (2.0 * e + n);
  return {lower, upper_bound(n + e, n)};
}

struct AbelianBounds {
  double lower = 0;
  double upper = 0;
  std::optional<long long> exact;
};

/// Bounds on the largest abelian subalgebra dimension: the independence
/// bounds shifted by d - b, and the exact value alpha + d - b when alpha is
/// known.
inline AbelianBounds abelian_dim_bounds(long long d, long long b,
                                        std::optional<long long> alpha = {}) {
  detail::check_dims(d, b);
  AbelianBounds out;
  out.lower = lower_bound(d, b).first + static_cast<double>(d - b);
  out.upper = upper_bound(d, b) + static_cast<double>(d - b);
  if (alpha) out.exact = *alpha + d - b;
  return out;
}

struct BoundReport {
  long long d = 0;
  long long b = 0;
  double lower = 0;
  double upper = 0;
  long long lower_ceil = 0;
  long long upper_floor = 0;
  std::optional<long long> alpha_exact;
  double abelian_lower = 0;
  double abelian_upper = 0;
  BoundCase case_tag = BoundCase::general;
};

inline BoundReport bound_report(long long d, long long b,
                                std::optional<long long> alpha = {}) {
  BoundReport r;
  r.d = d;
  r.b = b;
  auto [lo, tag] = lower_bound(d, b);
  r.lower = lo;
  r.case_tag = tag;
  r.upper = upper_bound(d, b);
  r.lower_ceil = lower_bound_ceil(d, b);
  r.upper_floor = upper_bound_floor(d, b);
  r.alpha_exact = alpha;
  const AbelianBounds ab = abelian_dim_bounds(d, b, alpha);
  r.abelian_lower = ab.lower;
  r.abelian_upper = ab.upper;
  return r;
}

}  // namespace nilcomb
