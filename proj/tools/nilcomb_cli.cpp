// Command-line surface: analyze | partition | bounds | graph | verify.
// JSON on stdout by default, --text for the human-readable rendering.
// Exit codes: 0 success, 2 usage/parse, 3 validation, 4 cap, 5 internal.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nilcomb/bounds.hpp"
#include "nilcomb/cohomology.hpp"
#include "nilcomb/config.hpp"
#include "nilcomb/graph_tools.hpp"
#include "nilcomb/io.hpp"
#include "nilcomb/lie.hpp"
#include "nilcomb/spectral.hpp"
#include "nilcomb/verify.hpp"

namespace {

using namespace nilcomb;

struct RunConfig {
  std::string heisenberg_arg;  // set via --heisenberg N
  int heisenberg_n = 0;
  std::string graph_file;
  bool dani_mainkar_flag = false;
  std::string algebra_file;
  std::string gram_file;
  int closed_form_heisenberg = 0;
  bool trinks = false;
  bool text = false;
  int jobs = 1;
  Caps caps;
  Tolerances tol;
};

/// Returns the algebra selected by --heisenberg / --graph / --algebra.
TwoStepAlgebra select_algebra(const RunConfig& cfg) {
  const int sources = (cfg.heisenberg_n > 0) + !cfg.graph_file.empty() +
                      !cfg.algebra_file.empty();
  if (sources != 1)
    throw ParseError("choose exactly one of --heisenberg, --graph, --algebra");
  if (cfg.heisenberg_n > 0) return heisenberg(cfg.heisenberg_n);
  if (!cfg.graph_file.empty()) return dani_mainkar(load_graph_file(cfg.graph_file));
  const RawAlgebra raw = load_raw_algebra_file(cfg.algebra_file);
  const ValidationReport report = validate_two_step(raw);
  if (!report.ok) throw ValidationError(report.message);
  return adapt_basis(raw).algebra;
}

void emit(const Json& doc, bool text, const std::string& rendered) {
  if (text)
    std::cout << rendered;
  else
    std::cout << doc.dump(2) << "\n";
}

int cmd_analyze(const RunConfig& cfg) {
  const TwoStepAlgebra alg = select_algebra(cfg);
  const GradedPolynomial ind = independence_polynomial(alg, cfg.caps, cfg.jobs);
  const int alpha = ind.degree();
  const IndependentSet mis = find_max_independent_set(alg, cfg.caps);
  const AbelianSubalgebra abelian = max_abelian_subalgebra(alg, cfg.caps);
  const BoundReport bounds = bound_report(alg.dim(), alg.b, alpha);

  Json doc;
  doc["dim"] = alg.dim();
  doc["b"] = alg.b;
  doc["c"] = alg.c;
  doc["independence_polynomial"] = graded_polynomial_to_json(ind);
  doc["alpha"] = alpha;
  Json set = Json::array();
  for (int i : mis.indices) set.push_back(i);
  doc["max_independent_set"] = std::move(set);
  Json ab;
  Json ys = Json::array();
  for (int i : abelian.y_indices) ys.push_back(i);
  ab["y_indices"] = std::move(ys);
  ab["dimension"] = abelian.dimension();
  doc["abelian_subalgebra"] = std::move(ab);
  doc["bounds"] = bound_report_to_json(bounds);

  std::string text;
  text += "dim = " + std::to_string(alg.dim()) + ", b = " + std::to_string(alg.b) +
          ", c = " + std::to_string(alg.c) + "\n";
  text += "I(g,t) = " + ind.to_string() + "\n";
  text += "alpha = " + std::to_string(alpha) + "\n";
  text += "max independent set = {";
  for (std::size_t i = 0; i < mis.indices.size(); ++i)
    text += (i ? ", " : "") + std::to_string(mis.indices[i]);
  text += "}\n";
  text += "abelian subalgebra dimension = " + std::to_string(abelian.dimension()) + "\n";
  text += "bounds: " + std::to_string(bounds.lower) + " <= alpha <= " +
          std::to_string(bounds.upper) + " (integers: [" +
          std::to_string(bounds.lower_ceil) + ", " + std::to_string(bounds.upper_floor) +
          "], case " + to_string(bounds.case_tag) + ")\n";
  emit(doc, cfg.text, text);
  return 0;
}

int cmd_partition(const RunConfig& cfg) {
  PartitionFunction pf;
  if (cfg.closed_form_heisenberg > 0) {
    pf = heisenberg_partition_closed_form(cfg.closed_form_heisenberg);
  } else if (!cfg.graph_file.empty() && cfg.gram_file.empty() && !cfg.dani_mainkar_flag) {
    pf = graph_partition_function(load_graph_file(cfg.graph_file), cfg.caps);
  } else {
    const TwoStepAlgebra alg = select_algebra(cfg);
    RationalMatrix gram = cfg.gram_file.empty() ? rational_identity(alg.dim())
                                                : load_gram_file(cfg.gram_file);
    pf = partition_function(make_metric_pair(alg, std::move(gram)), cfg.caps, cfg.tol,
                            cfg.jobs);
  }
  emit(partition_to_json(pf), cfg.text, "Z(s,t) = " + pf.to_string() + "\n");
  return 0;
}

int cmd_bounds(const RunConfig& cfg, long long dim, long long betti1) {
  Json doc;
  std::string text;
  if (dim > 0 || betti1 > 0) {
    if (!(dim > 0 && betti1 > 0))
      throw ParseError("--dim and --first-betti must be given together");
    const BoundReport r = bound_report(dim, betti1);
    doc = bound_report_to_json(r);
    text = "bounds: " + std::to_string(r.lower) + " <= alpha <= " +
           std::to_string(r.upper) + "\n";
  } else if (!cfg.graph_file.empty() && !cfg.dani_mainkar_flag) {
    const Graph g = load_graph_file(cfg.graph_file);
    const auto [lo, hi] = graph_bounds(g);
    doc["n"] = g.n;
    doc["edges"] = g.edge_count();
    doc["lower"] = lo;
    doc["upper"] = hi;
    text = "graph bounds: " + std::to_string(lo) + " <= alpha <= " +
           std::to_string(hi) + "\n";
  } else {
    const TwoStepAlgebra alg = select_algebra(cfg);
    const BoundReport r = bound_report(alg.dim(), alg.b);
    doc = bound_report_to_json(r);
    text = "bounds: " + std::to_string(r.lower) + " <= alpha <= " +
           std::to_string(r.upper) + "\n";
  }
  emit(doc, cfg.text, text);
  return 0;
}

int cmd_graph(const RunConfig& cfg) {
  if (cfg.graph_file.empty()) throw ParseError("graph: --graph FILE is required");
  const Graph g = load_graph_file(cfg.graph_file);
  const GradedPolynomial ind = brute_force_independence(g, cfg.caps);
  const auto [lo, hi] = graph_bounds(g);
  Json doc;
  doc["n"] = g.n;
  Json edges = Json::array();
  for (const auto& [i, j] : g.edges) edges.push_back(Json::array({i, j}));
  doc["edges"] = std::move(edges);
  doc["independence_polynomial"] = graded_polynomial_to_json(ind);
  doc["alpha"] = ind.degree();
  doc["lower"] = lo;
  doc["upper"] = hi;
  std::string text = "I(G,t) = " + ind.to_string() + "\nalpha = " +
                     std::to_string(ind.degree()) + "\nbounds: [" + std::to_string(lo) +
                     ", " + std::to_string(hi) + "]\n";
  if (cfg.trinks) {
    const MultiPoly f = trinks_polynomial(g, cfg.caps);
    doc["trinks"] = multipoly_to_json(f);
    text += "F(G,q,r,s,t): " + std::to_string(f.terms.size()) + " terms\n";
  }
  emit(doc, cfg.text, text);
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& scope) {
  VerifyScope s;
  if (scope == "quick")
    s = VerifyScope::quick;
  else if (scope == "full")
    s = VerifyScope::full;
  else
    throw ParseError("verify: scope must be 'quick' or 'full'");
  const std::vector<CheckResult> results = run_verification(s);
  bool all_pass = true;
  Json checks = Json::array();
  std::string text;
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    Json entry;
    entry["name"] = r.name;
    entry["pass"] = r.pass;
    entry["seconds"] = r.seconds;
    if (!r.detail.empty()) entry["detail"] = r.detail;
    checks.push_back(std::move(entry));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", r.seconds);
    text += std::string(r.pass ? "[PASS] " : "[FAIL] ") + r.name + " (" + buf + ")" +
            (r.detail.empty() ? "" : " -- " + r.detail) + "\n";
  }
  Json doc;
  doc["scope"] = scope;
  doc["pass"] = all_pass;
  doc["checks"] = std::move(checks);
  emit(doc, cfg.text, text);
  return all_pass ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"independence polynomials, cohomology, bounds and basic-Laplacian "
               "partition functions of 2-step nilpotent Lie algebras"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  if (const char* env = std::getenv("NILCOMB_CAP_OVERRIDE")) {
    try {
      cfg.caps.set_all(std::stoi(env));
    } catch (...) {
      std::cerr << "bad NILCOMB_CAP_OVERRIDE value '" << env << "'\n";
      return 2;
    }
  }

  int exact_cap = 0, spectral_cap = 0, enum_cap = 0;
  app.add_flag("--text", cfg.text, "human-readable output instead of JSON");
  app.add_option("--jobs", cfg.jobs, "worker threads for per-degree work")
      ->check(CLI::PositiveNumber);
  app.add_option("--exact-cap", exact_cap, "generator cap for exact-rank work");
  app.add_option("--spectral-cap", spectral_cap, "first-Betti cap for eigensolves");
  app.add_option("--enum-cap", enum_cap, "vertex cap for brute-force enumeration");
  app.add_option("--zero-tol", cfg.tol.zero, "zero-eigenvalue threshold");
  app.add_option("--cluster-tol", cfg.tol.cluster, "eigenvalue clustering tolerance");

  auto add_algebra_options = [&](CLI::App* sub) {
    sub->add_option("--heisenberg", cfg.heisenberg_n, "Heisenberg algebra h_N");
    sub->add_option("--graph", cfg.graph_file, "edge-list graph file");
    sub->add_flag("--dani-mainkar", cfg.dani_mainkar_flag,
                  "build the Dani-Mainkar algebra of --graph");
    sub->add_option("--algebra", cfg.algebra_file, "algebra JSON file");
  };

  CLI::App* analyze = app.add_subcommand(
      "analyze", "independence polynomial, independent set, abelian dimension, bounds");
  add_algebra_options(analyze);

  CLI::App* partition =
      app.add_subcommand("partition", "basic partition function Z(s,t)");
  add_algebra_options(partition);
  partition->add_option("--gram", cfg.gram_file, "gram matrix JSON file");
  partition->add_option("--closed-form-heisenberg", cfg.closed_form_heisenberg,
                        "closed-form Z for h_N");

  long long dim = 0, betti1 = 0;
  CLI::App* bounds = app.add_subcommand("bounds", "independence-number bounds");
  add_algebra_options(bounds);
  bounds->add_option("--dim", dim, "dimension d");
  bounds->add_option("--first-betti", betti1, "first Betti number b");

  CLI::App* graph = app.add_subcommand("graph", "brute-force graph oracles");
  graph->add_option("--graph", cfg.graph_file, "edge-list graph file");
  graph->add_flag("--trinks", cfg.trinks, "include the subgraph counting polynomial");

  std::string scope = "quick";
  CLI::App* verify = app.add_subcommand("verify", "run the cross-check battery");
  verify->add_option("--scope", scope, "quick | full");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.tol.check();
    if (exact_cap > 0) cfg.caps.exact_full = cfg.caps.exact_degree = exact_cap;
    if (spectral_cap > 0) cfg.caps.spectral = spectral_cap;
    if (enum_cap > 0) {
      cfg.caps.graph_enum = cfg.caps.graph_combinatorial = enum_cap;
      cfg.caps.trinks_vertices = enum_cap;
    }
    if (analyze->parsed()) return cmd_analyze(cfg);
    if (partition->parsed()) return cmd_partition(cfg);
    if (bounds->parsed()) return cmd_bounds(cfg, dim, betti1);
    if (graph->parsed()) return cmd_graph(cfg);
    if (verify->parsed()) return cmd_verify(cfg, scope);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 5;
  }
  return 2;
}
