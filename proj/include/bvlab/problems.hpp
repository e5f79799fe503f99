#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bvlab/json_io.hpp"
#include "bvlab/matrix.hpp"

namespace bvlab {

/// Arc of a multi-digraph, 1-based endpoints.
struct Arc {
  std::size_t from = 0;
  std::size_t to = 0;
  std::uint64_t mult = 1;

  friend bool operator==(const Arc&, const Arc&) = default;
};

struct DigraphInstance {
  std::size_t n = 0;
  std::vector<Arc> arcs;

  /// Entry (i, j) is the total multiplicity of (i, j) arcs.
  RatMatrix adjacency() const;
  /// Canonical instance: one arc per nonzero entry, row-major.
  static DigraphInstance from_adjacency(const RatMatrix& g);
};

struct CnfFormula {
  std::size_t num_vars = 0;
  /// Signed 1-based variable indices.
  std::vector<std::vector<int>> clauses;

  /// assignment[v] is the value of variable v + 1.
  bool satisfied_by(const std::vector<bool>& assignment) const;
};

struct WeightedDigraph {
  DigraphInstance graph;
  RatMatrix weights;
};

/// graph-JSON: {"n": int, "arcs": [[from, to, mult], ...]}.
DigraphInstance parse_graph(std::string_view text);
DigraphInstance graph_from_json(const json& j);
ordered_json graph_to_json(const DigraphInstance& g);
std::string emit_graph(const DigraphInstance& g);

/// graph-JSON plus "weights": row-major "p/q" strings.
WeightedDigraph parse_weighted_graph(std::string_view text);

CnfFormula parse_cnf(std::string_view text);
std::string emit_cnf(const CnfFormula& f);

struct DigraphGenOptions {
  bool allow_loops = false;
  /// Encode an undirected graph: draw each unordered pair once and add both arcs.
  bool symmetric = false;
};

DigraphInstance gen_random_digraph(std::size_t n, const Rational& arc_prob, std::uint64_t seed,
                                   DigraphGenOptions options = {});

/// Each clause gets `width` distinct variables with random signs.
CnfFormula gen_random_cnf(std::size_t vars, std::size_t clauses, std::size_t width, std::uint64_t seed);

/// Widens every clause to exactly k literals by repeating its last literal.
CnfFormula normalize_clause_width(const CnfFormula& f, std::size_t k);

}  // namespace bvlab
