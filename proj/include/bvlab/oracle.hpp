#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bvlab/incidence.hpp"
#include "bvlab/json_io.hpp"
#include "bvlab/matrix.hpp"
#include "bvlab/problems.hpp"
#include "bvlab/reductions.hpp"

namespace bvlab {

struct OracleVerdict {
  bool yes = false;
  /// Meaning depends on the decider: pattern->host vertex map, cycle/path order,
  /// clique vertices, matched pairs flattened, or one 0/1 value per SAT variable. 0-based.
  std::vector<std::size_t> witness;
  /// subgi only: the X of P X^T G X P^T >= S (x[host][pattern] = 1), padded to n x n.
  std::optional<PermMatrix> perm;
  std::uint64_t nodes = 0;
};

ordered_json verdict_to_json(const OracleVerdict& v);

/// P X^T G X P^T compared with S, computed literally from matrices.
/// Works for m x m and padded n x n patterns.
bool eq1_holds(const InstancePair& pair, const PermMatrix& x);

/// Extends an injective map of the first m pattern vertices to a permutation (pattern ->
/// host) by sending the rest to unused host vertices in increasing order.
PermMatrix extend_to_permutation(const std::vector<std::size_t>& map, std::size_t n);

/// The X of the matrix relation for a vertex map: x[map[p]][p] = 1.
PermMatrix eq1_matrix_of_map(const std::vector<std::size_t>& map, std::size_t n);

struct SubgiOptions {
  bool parallel = true;
};

/// Backtracking over injective maps with degree filtering and arc checks against mapped
/// vertices. Under COVER, pattern vertices without arcs are placed last, arbitrarily.
OracleVerdict subgi_oracle(const InstancePair& pair, const SubgiOptions& options = {});

/// Every one of the n! permutations checked through eq1_holds, without pruning.
OracleVerdict subgi_oracle_exhaustive(const InstancePair& pair);

/// Assignments in binary counting order (variable 1 most significant). vars <= 20.
OracleVerdict sat_oracle(const CnfFormula& f);

/// Directed Hamiltonian cycle; the witness lists vertices in cycle order starting at 0.
OracleVerdict hc_oracle(const DigraphInstance& g);
/// Directed Hamiltonian path.
OracleVerdict hp_oracle(const DigraphInstance& g);
/// m vertices pairwise joined by arcs in both directions.
OracleVerdict clique_oracle(const DigraphInstance& g, std::size_t m);
/// m/2 vertex-disjoint arcs (i, j) with i != j.
OracleVerdict matching_oracle(const DigraphInstance& g, std::size_t m);

struct IncidenceCheck {
  bool out_equation = false;
  bool in_equation = false;
  bool quadratic_condition = false;
  bool holds() const { return out_equation && in_equation; }
};

/// Substitutes X (n x n) and Z (k x k) into P_mn X O_G Z P_lk^T = O_S and the in-incidence
/// counterpart; also evaluates the quadratic side condition on Z.
IncidenceCheck incidence_witness_check(const IncidencePair& g, const IncidencePair& s, const PermMatrix& x,
                                       const PermMatrix& z);

/// Arc permutation matching a vertex map: each pattern arc takes the first unused host arc
/// with the mapped endpoints (label order). Returns (X, Z) for the incidence equations.
std::optional<std::pair<PermMatrix, PermMatrix>> incidence_witness_from_map(const IncidencePair& g,
                                                                            const IncidencePair& s,
                                                                            const std::vector<std::size_t>& map);

}  // namespace bvlab
