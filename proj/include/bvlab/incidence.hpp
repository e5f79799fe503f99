#pragma once

#include <cstddef>
#include <vector>

#include "bvlab/json_io.hpp"
#include "bvlab/matrix.hpp"

namespace bvlab {

/// One unit of a source matrix entry: (row, col, copy), 0-based.
struct ArcLabel {
  std::size_t row = 0;
  std::size_t col = 0;
  std::size_t copy = 0;

  friend bool operator==(const ArcLabel&, const ArcLabel&) = default;
};

/// Factorization M = out * in^T where column j of each factor holds a single 1.
struct IncidencePair {
  RatMatrix out;
  RatMatrix in;
  std::vector<ArcLabel> labels;

  std::size_t arcs() const { return labels.size(); }
  /// Rows of the source matrix (the vertex count for adjacency matrices).
  std::size_t vertices() const { return out.rows(); }
};

ordered_json incidence_to_json(const IncidencePair& p);
IncidencePair incidence_from_json(const json& j);

/// Labels arcs row-major with multiplicity copies consecutive.
/// k equals the total of all entries. Throws on negative or fractional entries.
IncidencePair incidence_decompose(const RatMatrix& m);

struct IncidenceStructure {
  bool one_per_column = false;
  std::vector<std::size_t> sinks;     ///< zero rows of the out-incidence matrix
  std::vector<std::size_t> sources;   ///< zero rows of the in-incidence matrix
  std::vector<std::size_t> isolated;  ///< zero rows of both
};

IncidenceStructure check_incidence_structure(const IncidencePair& p);

/// Cycle pattern labeled by end vertices: out = the cycle matrix, in = identity.
IncidencePair hc_incidence_pattern(std::size_t n);

/// Z P^T P Z^T <= identity entrywise, P the l x k truncation.
bool check_quadratic_condition(const RatMatrix& z, std::size_t l);

/// l x k truncation (U_l 0).
RatMatrix truncation(std::size_t l, std::size_t k);

}  // namespace bvlab
