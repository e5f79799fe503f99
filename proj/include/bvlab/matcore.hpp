#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "bvlab/matrix.hpp"

namespace bvlab {

struct SubstochasticReport {
  bool ok = false;
  bool nonnegative = false;
  /// 1 - row sum, 1 - column sum. Negative slack marks a violated line.
  std::vector<Rational> row_slack;
  std::vector<Rational> col_slack;
};

/// Nonnegative entries and every row and column sum <= 1. Throws on non-square input.
SubstochasticReport is_doubly_substochastic(const RatMatrix& m);

/// Nonnegative entries and every row and column sum exactly 1.
bool is_doubly_stochastic(const RatMatrix& m);

/// Sum of squared entries. Compared against n rather than sqrt(n) to stay rational.
Rational euclidean_norm_sq(const RatMatrix& m);

using Cell = std::pair<std::size_t, std::size_t>;

struct Extraction {
  PermMatrix perm;
  /// The n selected (row, col) cells, in selection order.
  std::vector<Cell> cells;
};

/// Picks a permutation supported on the nonzero cells of a doubly stochastic matrix.
/// Rows are processed in order; in each row the smallest column is taken among nonzero
/// cells in unused columns that still leave a perfect matching on the remaining support.
Extraction bvn_extract_permutation(const RatMatrix& x);

struct BvnTerm {
  Rational coefficient;
  PermMatrix perm;
};

struct BvnDecomposition {
  std::vector<BvnTerm> terms;
  RatMatrix reconstruct() const;
};

/// Repeated extraction: subtract lambda * P with lambda the least selected entry.
/// Asserts the (n-1)^2 + 1 term bound on the way out.
BvnDecomposition bvn_decompose(const RatMatrix& x);

/// Raises a doubly substochastic matrix to a doubly stochastic one by filling row and
/// column deficits with the northwest-corner rule. Existing entries are never lowered.
RatMatrix complete_to_doubly_stochastic(const RatMatrix& w);

/// Maximal affinely independent sublist of the family, chosen greedily in input order.
std::vector<PermMatrix> greedy_affine_basis(const std::vector<PermMatrix>& family);

}  // namespace bvlab
