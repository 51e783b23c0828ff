#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <utility>

#include "nilcomb/combinatorics.hpp"
#include "nilcomb/errors.hpp"
#include "nilcomb/rational.hpp"

namespace nilcomb {

// A squarefree anticommuting monomial is a bitmask over at most 64
// generators; bit i set means generator i occurs. Canonical form lists
// indices strictly increasing, so the mask itself is the canonical form and
// only signs need tracking.
using Mask = std::uint64_t;

constexpr int kMaxGenerators = 64;

inline int degree_of(Mask m) { return std::popcount(m); }

inline Mask bits_below(int i) { return (Mask{1} << i) - 1; }

/// Number of transpositions needed to sort the concatenation (a-indices,
/// b-indices): pairs (i in a, j in b) with j < i.
inline int wedge_inversions(Mask a, Mask b) {
  int inv = 0;
  while (a) {
    const int i = std::countr_zero(a);
    inv += std::popcount(b & bits_below(i));
    a &= a - 1;
  }
  return inv;
}

/// 0-based position of `gen` inside the increasing index list of `mask`.
inline int position_in(Mask mask, int gen) {
  return std::popcount(mask & bits_below(gen));
}

/// Normalizes an arbitrary index list to (sign, canonical mask).
/// Sign is (-1)^(inversion count); a repeated index yields sign 0.
inline std::pair<int, Mask> canonicalize_indices(std::span<const int> indices) {
  Mask m = 0;
  int inversions = 0;
  for (int i : indices) {
    if (i < 0 || i >= kMaxGenerators)
      throw ValidationError("generator index out of range");
    const Mask bit = Mask{1} << i;
    if (m & bit) return {0, Mask{0}};
    // i is appended after everything already placed; inversions added are
    // the already-placed indices greater than i.
    inversions += std::popcount(m) - std::popcount(m & bits_below(i));
    m |= bit;
  }
  return {(inversions % 2 == 0) ? 1 : -1, m};
}

template <typename Coeff>
struct CoeffTraits;

template <>
struct CoeffTraits<Rational> {
  static bool is_zero(const Rational& c) { return sgn(c) == 0; }
  static std::string to_string(const Rational& c) { return rational_to_string(c); }
};

template <>
struct CoeffTraits<double> {
  static bool is_zero(double c) { return c == 0.0; }
  static std::string to_string(double c) {
    std::ostringstream os;
    os << c;
    return os.str();
  }
};

/// Sparse linear combination of canonical monomials over a fixed number of
/// generators. Immutable in spirit: operations return new values.
template <typename Coeff>
class ExteriorPoly {
 public:
  explicit ExteriorPoly(int generators) : generators_(generators) {
    if (generators < 0 || generators > kMaxGenerators)
      throw ValidationError("generator count must be in [0, 64]");
  }

  static ExteriorPoly monomial(int generators, Mask m, Coeff coefficient) {
    ExteriorPoly p(generators);
    p.add_term(m, std::move(coefficient));
    return p;
  }

  static ExteriorPoly unit(int generators) {
    return monomial(generators, Mask{0}, Coeff(1));
  }

  int generators() const { return generators_; }
  const std::map<Mask, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(Mask m, Coeff coefficient) {
    if (CoeffTraits<Coeff>::is_zero(coefficient)) return;
    if (generators_ < kMaxGenerators && (m >> generators_) != 0)
      throw ValidationError("monomial uses generators beyond the declared count");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, std::move(coefficient));
    } else {
      it->second += coefficient;
      if (CoeffTraits<Coeff>::is_zero(it->second)) terms_.erase(it);
    }
  }

  ExteriorPoly& operator+=(const ExteriorPoly& other) {
    require_same_generators(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }

  ExteriorPoly& operator-=(const ExteriorPoly& other) {
    require_same_generators(other);
    for (const auto& [m, c] : other.terms_) add_term(m, Coeff(-c));
    return *this;
  }

  ExteriorPoly& scale(const Coeff& factor) {
    if (CoeffTraits<Coeff>::is_zero(factor)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= factor;
    return *this;
  }

  /// Degree of the highest-degree term, or -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, degree_of(m));
    return d;
  }

  bool is_homogeneous(int k) const {
    for (const auto& [m, c] : terms_)
      if (degree_of(m) != k) return false;
    return true;
  }

  void require_same_generators(const ExteriorPoly& other) const {
    if (generators_ != other.generators_)
      throw ValidationError("generator-count mismatch");
  }

  friend bool operator==(const ExteriorPoly& a, const ExteriorPoly& b) {
    return a.generators_ == b.generators_ && a.terms_ == b.terms_;
  }

 private:
  int generators_;
  std::map<Mask, Coeff> terms_;
};

template <typename Coeff>
ExteriorPoly<Coeff> operator+(ExteriorPoly<Coeff> a, const ExteriorPoly<Coeff>& b) {
  a += b;
  return a;
}

template <typename Coeff>
ExteriorPoly<Coeff> operator-(ExteriorPoly<Coeff> a, const ExteriorPoly<Coeff>& b) {
  a -= b;
  return a;
}

/// Bilinear wedge product. On monomials: zero when index sets intersect,
/// otherwise the union signed by the inversion count of the concatenation.
template <typename Coeff>
ExteriorPoly<Coeff> wedge(const ExteriorPoly<Coeff>& a, const ExteriorPoly<Coeff>& b) {
  a.require_same_generators(b);
  ExteriorPoly<Coeff> out(a.generators());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      if (ma & mb) continue;
      Coeff c = ca * cb;
      if (wedge_inversions(ma, mb) % 2 != 0) c = -c;
      out.add_term(ma | mb, std::move(c));
    }
  }
  return out;
}

/// Interior derivative with respect to generator `gen`: on a canonical
/// monomial containing gen at position r it gives (-1)^r times the monomial
/// with gen removed; zero when gen is absent. Extended linearly.
template <typename Coeff>
ExteriorPoly<Coeff> interior_derivative(const ExteriorPoly<Coeff>& p, int gen) {
  if (gen < 0 || gen >= p.generators())
    throw ValidationError("interior derivative generator out of range");
  ExteriorPoly<Coeff> out(p.generators());
  const Mask bit = Mask{1} << gen;
  for (const auto& [m, c] : p.terms()) {
    if (!(m & bit)) continue;
    Coeff v = c;
    if (position_in(m, gen) % 2 != 0) v = -v;
    out.add_term(m ^ bit, std::move(v));
  }
  return out;
}

/// Terms of degree exactly k.
template <typename Coeff>
ExteriorPoly<Coeff> graded_slice(const ExteriorPoly<Coeff>& p, int k) {
  ExteriorPoly<Coeff> out(p.generators());
  for (const auto& [m, c] : p.terms())
    if (degree_of(m) == k) out.add_term(m, c);
  return out;
}

/// Debug rendering, e.g. "y0*y1* - 2 y2*y3*". Generators with index below
/// y_count print as y<i>*, the rest as z<i - y_count>*. Logs only.
template <typename Coeff>
std::string to_string(const ExteriorPoly<Coeff>& p, int y_count = -1) {
  if (p.is_zero()) return "0";
  if (y_count < 0) y_count = p.generators();
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    std::string cs = CoeffTraits<Coeff>::to_string(c);
    bool negative = !cs.empty() && cs[0] == '-';
    if (negative) cs.erase(0, 1);
    out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
    first = false;
    std::string mono;
    for (int i : indices_from_mask(m))
      mono += (i < y_count ? "y" + std::to_string(i) : "z" + std::to_string(i - y_count)) + "*";
    if (mono.empty()) {
      out += cs;
    } else {
      if (cs != "1") out += cs + " ";
      out += mono;
    }
  }
  return out;
}

}  // namespace nilcomb
