#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bvlab/json_io.hpp"
#include "bvlab/matrix.hpp"
#include "bvlab/problems.hpp"

namespace bvlab {

/// COVER: the relabeled truncated G must dominate S entrywise. EQUAL: must match it (GI).
enum class Relation { Cover, Equal };

std::string to_string(Relation r);
Relation relation_from_string(const std::string& s);

/// Instance/pattern pair (G, S). S is m x m; after padding m == n.
struct InstancePair {
  RatMatrix G;
  RatMatrix S;
  std::size_t m = 0;
  Relation relation = Relation::Cover;
  std::string provenance;

  std::size_t n() const { return G.rows(); }
  bool padded() const { return S.rows() == G.rows(); }
  /// Checks shape, sign and integrality invariants; throws on violation.
  void validate() const;
};

ordered_json pair_to_json(const InstancePair& p);
InstancePair pair_from_json(const json& j);

/// Per-clause-pair compatibility boxes of a SAT reduction.
struct SatCompatibility {
  std::vector<std::size_t> box_sizes;
  /// boxes[i][j] is B_ij, of shape box_sizes[i] x box_sizes[j].
  std::vector<std::vector<RatMatrix>> boxes;
  /// Global row offset of box i inside G.
  std::vector<std::size_t> offsets;
};

struct SatReduction {
  InstancePair pair;
  SatCompatibility compat;
};

InstancePair build_subgi_pair(const DigraphInstance& g, const DigraphInstance& s, Relation mode);

/// All-ones minus identity, m x m.
RatMatrix build_clique_pattern(std::size_t m);
/// Cycle matrix with ones at (1, n) and (i+1, i).
RatMatrix build_hc_pattern(std::size_t n);
/// The cycle matrix with its (1, n) one removed.
RatMatrix build_hp_pattern(std::size_t n);
/// Ones at (1,2), (3,4), ..., (m-1, m). `perfect` requires m == n.
RatMatrix build_matching_pattern(std::size_t m, bool perfect, std::size_t n);

InstancePair build_clique_pair(const DigraphInstance& g, std::size_t m);
InstancePair build_hc_pair(const DigraphInstance& g);
InstancePair build_hp_pair(const DigraphInstance& g);
InstancePair build_matching_pair(const DigraphInstance& g, std::size_t m, bool perfect);

/// Truth-table boxes of size 2^k. Row r of clause i assigns literal t the bit
/// (r >> (k - 1 - t)) & 1, so row 1 is all-false.
SatReduction build_ksat_pair(const CnfFormula& f, unsigned k);

/// Literal boxes B_ij = 1 - delta(L_ia, not L_jb), literal order as written.
SatReduction build_sat_pair(const CnfFormula& f);

/// Appends n - m isolated pattern vertices; S becomes n x n.
InstancePair pad_pattern(const InstancePair& pair);

}  // namespace bvlab
