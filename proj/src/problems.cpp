#include "bvlab/problems.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "bvlab/random.hpp"

namespace bvlab {

RatMatrix DigraphInstance::adjacency() const {
  RatMatrix g(n, n);
  for (const auto& a : arcs) g(a.from - 1, a.to - 1) += Rational(std::to_string(a.mult));
  return g;
}

DigraphInstance DigraphInstance::from_adjacency(const RatMatrix& g) {
  if (!g.is_square() || !g.is_nonneg_integer()) {
    throw std::invalid_argument("from_adjacency: need a square nonnegative integer matrix");
  }
  DigraphInstance out;
  out.n = g.rows();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (g(i, j) != 0) out.arcs.push_back({i + 1, j + 1, g(i, j).get_num().get_ui()});
  return out;
}

bool CnfFormula::satisfied_by(const std::vector<bool>& assignment) const {
  for (const auto& clause : clauses) {
    bool sat = false;
    for (int lit : clause) {
      const bool value = assignment.at(static_cast<std::size_t>(std::abs(lit)) - 1);
      if ((lit > 0) == value) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

DigraphInstance graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("arcs")) {
    throw std::invalid_argument("graph JSON needs \"n\" and \"arcs\"");
  }
  DigraphInstance g;
  g.n = j.at("n").get<std::size_t>();
  for (const auto& a : j.at("arcs")) {
    if (!a.is_array() || a.size() != 3) throw std::invalid_argument("arc must be [from, to, mult]");
    Arc arc{a[0].get<std::size_t>(), a[1].get<std::size_t>(), a[2].get<std::uint64_t>()};
    if (arc.from < 1 || arc.from > g.n || arc.to < 1 || arc.to > g.n) {
      throw std::invalid_argument("arc endpoint out of range 1.." + std::to_string(g.n));
    }
    if (arc.mult == 0) throw std::invalid_argument("arc multiplicity must be >= 1");
    g.arcs.push_back(arc);
  }
  return g;
}

DigraphInstance parse_graph(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed graph JSON: ") + e.what());
  }
  return graph_from_json(j);
}

ordered_json graph_to_json(const DigraphInstance& g) {
  const auto canonical = DigraphInstance::from_adjacency(g.adjacency());
  ordered_json out;
  out["n"] = g.n;
  ordered_json arcs = ordered_json::array();
  for (const auto& a : canonical.arcs) arcs.push_back({a.from, a.to, a.mult});
  out["arcs"] = std::move(arcs);
  return out;
}

std::string emit_graph(const DigraphInstance& g) { return graph_to_json(g).dump(); }

WeightedDigraph parse_weighted_graph(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed graph JSON: ") + e.what());
  }
  WeightedDigraph wg;
  wg.graph = graph_from_json(j);
  if (!j.contains("weights")) throw std::invalid_argument("weighted graph JSON needs \"weights\"");
  const auto& w = j.at("weights");
  if (!w.is_array() || w.size() != wg.graph.n * wg.graph.n) {
    throw std::invalid_argument("weights must hold n*n entries");
  }
  std::vector<Rational> entries;
  for (const auto& e : w) entries.push_back(rational_from_json(e));
  wg.weights = RatMatrix(wg.graph.n, wg.graph.n, std::move(entries));
  return wg;
}

CnfFormula parse_cnf(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  CnfFormula f;
  bool have_header = false;
  std::size_t declared_clauses = 0;
  std::vector<int> current;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c") continue;
    if (first == "%") break;
    if (first == "p") {
      std::string fmt;
      if (have_header || !(ls >> fmt >> f.num_vars >> declared_clauses) || fmt != "cnf") {
        throw std::invalid_argument("malformed DIMACS header: " + line);
      }
      have_header = true;
      continue;
    }
    if (!have_header) throw std::invalid_argument("clause before DIMACS header");
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      char* end = nullptr;
      const long lit = std::strtol(tok.c_str(), &end, 10);
      if (*end != '\0') throw std::invalid_argument("bad literal '" + tok + "'");
      if (lit == 0) {
        if (current.empty()) throw std::invalid_argument("empty clause");
        f.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (static_cast<std::size_t>(std::labs(lit)) > f.num_vars) {
        throw std::invalid_argument("literal " + tok + " references an undeclared variable");
      }
      current.push_back(static_cast<int>(lit));
    }
  }
  if (!have_header) throw std::invalid_argument("missing DIMACS header");
  if (!current.empty()) throw std::invalid_argument("last clause is not terminated by 0");
  if (f.clauses.size() != declared_clauses) {
    throw std::invalid_argument("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                                std::to_string(f.clauses.size()));
  }
  if (f.clauses.empty()) throw std::invalid_argument("formula has no clauses");
  return f;
}

std::string emit_cnf(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (int lit : c) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

DigraphInstance gen_random_digraph(std::size_t n, const Rational& arc_prob, std::uint64_t seed,
                                   DigraphGenOptions options) {
  if (arc_prob < 0 || arc_prob > 1) throw std::invalid_argument("arc_prob must lie in [0, 1]");
  Rng rng(seed);
  RatMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = options.symmetric ? i : 0; j < n; ++j) {
      if (i == j && !options.allow_loops) continue;
      if (!draw_bernoulli(rng, arc_prob)) continue;
      g(i, j) = 1;
      if (options.symmetric) g(j, i) = 1;
    }
  }
  auto out = DigraphInstance::from_adjacency(g);
  out.n = n;
  return out;
}

CnfFormula gen_random_cnf(std::size_t vars, std::size_t clauses, std::size_t width, std::uint64_t seed) {
  if (width > vars) throw std::invalid_argument("clause width exceeds variable count");
  if (width == 0) throw std::invalid_argument("clause width must be positive");
  Rng rng(seed);
  CnfFormula f;
  f.num_vars = vars;
  std::vector<int> pool(vars);
  for (std::size_t v = 0; v < vars; ++v) pool[v] = static_cast<int>(v + 1);
  for (std::size_t c = 0; c < clauses; ++c) {
    // partial Fisher-Yates for `width` distinct variables
    for (std::size_t k = 0; k < width; ++k) {
      const std::size_t pick = k + draw_below(rng, vars - k);
      std::swap(pool[k], pool[pick]);
    }
    std::vector<int> clause(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(width));
    for (auto& lit : clause) {
      if (draw_below(rng, 2) == 1) lit = -lit;
    }
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

CnfFormula normalize_clause_width(const CnfFormula& f, std::size_t k) {
  CnfFormula out = f;
  for (auto& clause : out.clauses) {
    if (clause.empty()) throw std::invalid_argument("cannot widen an empty clause");
    if (clause.size() > k) throw std::invalid_argument("clause is wider than k");
    while (clause.size() < k) clause.push_back(clause.back());
  }
  return out;
}

}  // namespace bvlab
