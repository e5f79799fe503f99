#include "bvlab/reductions.hpp"

#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>

namespace bvlab {

std::string to_string(Relation r) { return r == Relation::Cover ? "COVER" : "EQUAL"; }

Relation relation_from_string(const std::string& s) {
  if (s == "COVER") return Relation::Cover;
  if (s == "EQUAL") return Relation::Equal;
  throw std::invalid_argument("relation must be COVER or EQUAL, got '" + s + "'");
}

void InstancePair::validate() const {
  if (!G.is_square() || !S.is_square()) throw std::invalid_argument("pair: G and S must be square");
  if (S.rows() != m && S.rows() != G.rows()) throw std::invalid_argument("pair: S must be m x m or n x n");
  if (m > G.rows()) throw std::invalid_argument("pair: m exceeds n");
  if (!G.is_nonneg_integer() || !S.is_nonneg_integer()) {
    throw std::invalid_argument("pair: entries must be nonnegative integers");
  }
  if (relation == Relation::Equal && m != G.rows()) throw std::invalid_argument("pair: EQUAL requires m == n");
}

ordered_json pair_to_json(const InstancePair& p) {
  ordered_json out;
  out["G"] = matrix_to_json(p.G);
  out["S"] = matrix_to_json(p.S);
  out["m"] = p.m;
  out["relation"] = to_string(p.relation);
  out["provenance"] = p.provenance;
  return out;
}

InstancePair pair_from_json(const json& j) {
  InstancePair p;
  p.G = matrix_from_json(j.at("G"));
  p.S = matrix_from_json(j.at("S"));
  p.m = j.contains("m") ? j.at("m").get<std::size_t>() : p.S.rows();
  p.relation = relation_from_string(j.value("relation", std::string("COVER")));
  p.provenance = j.value("provenance", std::string("subgi"));
  p.validate();
  return p;
}

InstancePair build_subgi_pair(const DigraphInstance& g, const DigraphInstance& s, Relation mode) {
  if (s.n > g.n) throw std::invalid_argument("pattern has more vertices than instance");
  if (mode == Relation::Equal && s.n != g.n) throw std::invalid_argument("EQUAL mode needs equal vertex counts");
  InstancePair p{g.adjacency(), s.adjacency(), s.n, mode, mode == Relation::Equal ? "gi" : "subgi"};
  p.validate();
  return p;
}

RatMatrix build_clique_pattern(std::size_t m) {
  if (m < 1) throw std::invalid_argument("clique pattern needs m >= 1");
  return RatMatrix::ones(m, m) - RatMatrix::identity(m);
}

RatMatrix build_hc_pattern(std::size_t n) {
  if (n < 2) throw std::invalid_argument("HC pattern needs n >= 2");
  RatMatrix s(n, n);
  s(0, n - 1) = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) s(i + 1, i) = 1;
  return s;
}

RatMatrix build_hp_pattern(std::size_t n) {
  RatMatrix s = build_hc_pattern(n);
  s(0, n - 1) = 0;
  return s;
}

RatMatrix build_matching_pattern(std::size_t m, bool perfect, std::size_t n) {
  if (m % 2 != 0) throw std::invalid_argument("matching pattern needs even m");
  if (perfect && m != n) throw std::invalid_argument("perfect matching needs m == n");
  if (m > n) throw std::invalid_argument("matching pattern larger than instance");
  RatMatrix s(m, m);
  for (std::size_t i = 0; i + 1 < m; i += 2) s(i, i + 1) = 1;
  return s;
}

namespace {

InstancePair pattern_pair(const DigraphInstance& g, RatMatrix s, std::string provenance) {
  const std::size_t m = s.rows();
  InstancePair p{g.adjacency(), std::move(s), m, Relation::Cover, std::move(provenance)};
  p.validate();
  return p;
}

}  // namespace

InstancePair build_clique_pair(const DigraphInstance& g, std::size_t m) {
  if (m > g.n) throw std::invalid_argument("clique size exceeds vertex count");
  return pattern_pair(g, build_clique_pattern(m), "clique");
}

InstancePair build_hc_pair(const DigraphInstance& g) { return pattern_pair(g, build_hc_pattern(g.n), "hc"); }

InstancePair build_hp_pair(const DigraphInstance& g) { return pattern_pair(g, build_hp_pattern(g.n), "hp"); }

InstancePair build_matching_pair(const DigraphInstance& g, std::size_t m, bool perfect) {
  return pattern_pair(g, build_matching_pattern(m, perfect, g.n), perfect ? "perfect-matching" : "matching");
}

namespace {

// Assembles G and S from per-clause boxes; diagonal boxes are identities and each
// pattern box carries a single 1 in its upper-left corner.
SatReduction assemble(SatCompatibility compat, std::string provenance) {
  const std::size_t clauses = compat.box_sizes.size();
  std::size_t total = 0;
  compat.offsets.clear();
  for (std::size_t sz : compat.box_sizes) {
    compat.offsets.push_back(total);
    total += sz;
  }
  RatMatrix g(total, total);
  RatMatrix s(total, total);
  for (std::size_t i = 0; i < clauses; ++i) {
    for (std::size_t j = 0; j < clauses; ++j) {
      const RatMatrix& box = compat.boxes[i][j];
      for (std::size_t a = 0; a < box.rows(); ++a)
        for (std::size_t b = 0; b < box.cols(); ++b) g(compat.offsets[i] + a, compat.offsets[j] + b) = box(a, b);
      s(compat.offsets[i], compat.offsets[j]) = 1;
    }
  }
  SatReduction out{{std::move(g), std::move(s), total, Relation::Cover, std::move(provenance)}, std::move(compat)};
  out.pair.validate();
  return out;
}

// Variable values implied by one truth-table row, or nullopt if two literals on the
// same variable demand opposite values.
std::optional<std::map<int, bool>> row_assignment(const std::vector<int>& clause, std::size_t row) {
  const std::size_t k = clause.size();
  std::map<int, bool> values;
  for (std::size_t t = 0; t < k; ++t) {
    const bool lit_value = ((row >> (k - 1 - t)) & 1U) != 0;
    const int var = std::abs(clause[t]);
    const bool var_value = clause[t] > 0 ? lit_value : !lit_value;
    auto [it, inserted] = values.emplace(var, var_value);
    if (!inserted && it->second != var_value) return std::nullopt;
  }
  return values;
}

bool row_makes_clause_true(std::size_t row) { return row != 0; }

bool consistent(const std::map<int, bool>& a, const std::map<int, bool>& b) {
  for (const auto& [var, value] : a) {
    auto it = b.find(var);
    if (it != b.end() && it->second != value) return false;
  }
  return true;
}

}  // namespace

SatReduction build_ksat_pair(const CnfFormula& f, unsigned k) {
  if (k != 2 && k != 3) throw std::invalid_argument("k-SAT reduction supports k = 2 or 3");
  for (const auto& c : f.clauses) {
    if (c.size() != k) {
      throw std::invalid_argument("clause width " + std::to_string(c.size()) + " differs from k = " +
                                  std::to_string(k));
    }
  }
  const std::size_t rows = std::size_t{1} << k;
  const std::size_t clauses = f.clauses.size();
  // Rows that are internally consistent and satisfy their clause; others never pair up.
  std::vector<std::vector<std::optional<std::map<int, bool>>>> table(clauses);
  for (std::size_t i = 0; i < clauses; ++i) {
    for (std::size_t r = 0; r < rows; ++r) {
      auto a = row_assignment(f.clauses[i], r);
      if (a && !row_makes_clause_true(r)) a.reset();
      table[i].push_back(std::move(a));
    }
  }
  SatCompatibility compat;
  compat.box_sizes.assign(clauses, rows);
  compat.boxes.assign(clauses, std::vector<RatMatrix>(clauses));
  for (std::size_t i = 0; i < clauses; ++i) {
    for (std::size_t j = 0; j < clauses; ++j) {
      if (i == j) {
        compat.boxes[i][j] = RatMatrix::identity(rows);
        continue;
      }
      RatMatrix box(rows, rows);
      for (std::size_t a = 0; a < rows; ++a)
        for (std::size_t b = 0; b < rows; ++b)
          if (table[i][a] && table[j][b] && consistent(*table[i][a], *table[j][b])) box(a, b) = 1;
      compat.boxes[i][j] = std::move(box);
    }
  }
  return assemble(std::move(compat), k == 3 ? "3sat" : "2sat");
}

SatReduction build_sat_pair(const CnfFormula& f) {
  const std::size_t clauses = f.clauses.size();
  if (clauses == 0) throw std::invalid_argument("SAT reduction needs at least one clause");
  SatCompatibility compat;
  for (const auto& c : f.clauses) {
    if (c.empty()) throw std::invalid_argument("SAT reduction: empty clause");
    compat.box_sizes.push_back(c.size());
  }
  compat.boxes.assign(clauses, std::vector<RatMatrix>(clauses));
  for (std::size_t i = 0; i < clauses; ++i) {
    for (std::size_t j = 0; j < clauses; ++j) {
      const auto& ci = f.clauses[i];
      const auto& cj = f.clauses[j];
      if (i == j) {
        compat.boxes[i][j] = RatMatrix::identity(ci.size());
        continue;
      }
      RatMatrix box(ci.size(), cj.size());
      for (std::size_t a = 0; a < ci.size(); ++a)
        for (std::size_t b = 0; b < cj.size(); ++b) box(a, b) = ci[a] == -cj[b] ? 0 : 1;
      compat.boxes[i][j] = std::move(box);
    }
  }
  return assemble(std::move(compat), "sat");
}

InstancePair pad_pattern(const InstancePair& pair) {
  InstancePair out = pair;
  const std::size_t n = pair.n();
  out.S = pair.S.padded(n, n);
  out.m = n;
  out.validate();
  return out;
}

}  // namespace bvlab
