#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilcomb/bounds.hpp"
#include "nilcomb/cohomology.hpp"
#include "nilcomb/errors.hpp"
#include "nilcomb/graph.hpp"
#include "nilcomb/graph_tools.hpp"
#include "nilcomb/lie.hpp"
#include "nilcomb/linalg.hpp"
#include "nilcomb/spectral.hpp"

namespace nilcomb {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return in;
}

inline Json parse_json(std::istream& in, const std::string& what) {
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad " + what + ": " + e.what());
  }
}

}  // namespace detail

/// Edge-list format: a header line `n <vertex-count>`, then one `i j` pair
/// per line. Blank lines and `#` comments are ignored.
inline Graph load_graph(std::istream& in) {
  Graph g;
  bool have_header = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank
    const std::string where = " (line " + std::to_string(lineno) + ")";
    if (!have_header) {
      int n;
      if (first != "n" || !(ls >> n) || n < 0)
        throw ParseError("expected header 'n <vertex-count>'" + where);
      std::string extra;
      if (ls >> extra) throw ParseError("trailing tokens after header" + where);
      g = Graph(n);
      have_header = true;
      continue;
    }
    int i, j;
    std::string extra;
    std::istringstream es(line);
    if (!(es >> i >> j) || (es >> extra))
      throw ParseError("expected an edge 'i j'" + where);
    try {
      g.add_edge(i, j);
    } catch (const ValidationError& e) {
      throw ParseError(std::string(e.what()) + where);
    }
  }
  if (!have_header) throw ParseError("missing 'n <vertex-count>' header");
  return g;
}

inline Graph load_graph_file(const std::string& path) {
  auto in = detail::open_file(path);
  return load_graph(in);
}

/// Algebra format: {"dim": d, "brackets": [{"i": i, "j": j, "v": [...]}]}
/// with 1-based indices and length-d rational strings; antisymmetric closure
/// implied.
inline RawAlgebra load_raw_algebra(std::istream& in) {
  const Json doc = detail::parse_json(in, "algebra file");
  RawAlgebra raw;
  try {
    raw.dim = doc.at("dim").get<int>();
    if (raw.dim < 0) throw ParseError("negative dim");
    for (const auto& entry : doc.at("brackets")) {
      const int i = entry.at("i").get<int>();
      const int j = entry.at("j").get<int>();
      std::vector<Rational> v;
      for (const auto& cell : entry.at("v"))
        v.push_back(parse_rational(cell.get<std::string>()));
      if (static_cast<int>(v.size()) != raw.dim)
        throw ParseError("bracket vector for (" + std::to_string(i) + ", " +
                         std::to_string(j) + ") must have length " +
                         std::to_string(raw.dim));
      if (!raw.brackets.emplace(std::make_pair(i, j), std::move(v)).second)
        throw ParseError("duplicate bracket entry (" + std::to_string(i) + ", " +
                         std::to_string(j) + ")");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad algebra file: ") + e.what());
  }
  return raw;
}

inline RawAlgebra load_raw_algebra_file(const std::string& path) {
  auto in = detail::open_file(path);
  return load_raw_algebra(in);
}

/// Gram format: {"gram": [["1", "0", ...], ...]}, rational strings,
/// row-major, symmetric.
inline RationalMatrix load_gram(std::istream& in) {
  const Json doc = detail::parse_json(in, "gram file");
  RationalMatrix m;
  try {
    for (const auto& row : doc.at("gram")) {
      std::vector<Rational> r;
      for (const auto& cell : row) r.push_back(parse_rational(cell.get<std::string>()));
      m.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad gram file: ") + e.what());
  }
  for (const auto& row : m)
    if (row.size() != m.size()) throw ParseError("gram matrix must be square");
  return m;
}

inline RationalMatrix load_gram_file(const std::string& path) {
  auto in = detail::open_file(path);
  return load_gram(in);
}

inline Json graded_polynomial_to_json(const GradedPolynomial& p) {
  Json out = Json::array();
  for (long long c : p.coeffs) out.push_back(c);
  return out;
}

/// {"terms": [{"energy": ..., "exact_energy": ..., "degree": ..., "mult": ...}]}
/// sorted by (degree, energy).
inline Json partition_to_json(const PartitionFunction& pf) {
  Json terms = Json::array();
  for (const auto& t : pf.terms) {
    Json entry;
    entry["energy"] = t.energy;
    if (t.exact_energy) entry["exact_energy"] = *t.exact_energy;
    entry["degree"] = t.degree;
    entry["mult"] = t.multiplicity;
    terms.push_back(std::move(entry));
  }
  Json out;
  out["terms"] = std::move(terms);
  return out;
}

inline Json bound_report_to_json(const BoundReport& r) {
  Json out;
  out["d"] = r.d;
  out["b"] = r.b;
  out["case"] = to_string(r.case_tag);
  out["lower"] = r.lower;
  out["upper"] = r.upper;
  out["lower_ceil"] = r.lower_ceil;
  out["upper_floor"] = r.upper_floor;
  if (r.alpha_exact) out["alpha"] = *r.alpha_exact;
  out["abelian_lower"] = r.abelian_lower;
  out["abelian_upper"] = r.abelian_upper;
  return out;
}

inline Json multipoly_to_json(const MultiPoly& p) {
  Json terms = Json::array();
  for (const auto& [exps, coeff] : p.terms) {
    Json entry;
    entry["q"] = exps[0];
    entry["r"] = exps[1];
    entry["s"] = exps[2];
    entry["t"] = exps[3];
    entry["c"] = coeff;
    terms.push_back(std::move(entry));
  }
  Json out;
  out["terms"] = std::move(terms);
  return out;
}

}  // namespace nilcomb
