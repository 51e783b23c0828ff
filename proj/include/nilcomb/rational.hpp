#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <vector>

#include "nilcomb/errors.hpp"

namespace nilcomb {

// Exact scalars. mpq_class keeps values reduced with positive denominator,
// which is exactly the canonical form required everywhere downstream.
using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

/// mpz_class has no long long constructor; 64-bit long covers it here.
inline Integer to_integer(long long v) { return Integer(static_cast<long>(v)); }

/// Parses "p" or "p/q" with an optional leading sign. Anything else,
/// including a zero denominator, is a ParseError.
inline Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ParseError("empty rational literal");

  auto digits_only = [](const std::string& str, std::size_t from) {
    if (from >= str.size()) return false;
    for (std::size_t i = from; i < str.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(str[i]))) return false;
    return true;
  };

  const std::size_t slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);

  std::size_t num_start = (!num.empty() && (num[0] == '-' || num[0] == '+')) ? 1 : 0;
  if (!digits_only(num, num_start) || !digits_only(den, 0))
    throw ParseError("bad rational literal: '" + text + "'");

  Rational r;
  if (mpq_set_str(r.get_mpq_t(), (num + "/" + den).c_str(), 10) != 0)
    throw ParseError("bad rational literal: '" + text + "'");
  if (sgn(Integer(r.get_den())) == 0)
    throw ParseError("zero denominator in rational literal: '" + text + "'");
  r.canonicalize();
  return r;
}

inline std::string rational_to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::vector<Rational> parse_rational_row(const std::vector<std::string>& row) {
  std::vector<Rational> out;
  out.reserve(row.size());
  for (const auto& s : row) out.push_back(parse_rational(s));
  return out;
}

}  // namespace nilcomb
