#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "bvlab/rational.hpp"

namespace bvlab {

/// Incrementally maintained row-echelon basis of a subspace of Q^dim.
/// Rows are kept sparse and normalized so each pivot entry is 1.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }

  /// Residual of v after elimination against the basis (zero iff v is in the span).
  std::vector<Rational> reduce(std::vector<Rational> v) const;
  bool contains(std::span<const Rational> v) const;

  /// Adds v if it is independent of the current span; returns whether the rank grew.
  bool insert(std::vector<Rational> v);

 private:
  using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

  std::size_t dim_;
  std::vector<SparseRow> rows_;
  std::vector<std::size_t> pivots_;
};

/// Exact rank of a list of equal-length vectors.
std::size_t exact_rank(std::span<const std::vector<Rational>> vectors);

/// Greedy selection in input order of a maximal affinely independent sublist.
/// Returns the indices kept. The affine span of the kept vectors equals that of the input.
std::vector<std::size_t> greedy_affine_select(std::span<const std::vector<Rational>> vectors);

/// Greedy selection in input order of a maximal linearly independent sublist (indices kept).
std::vector<std::size_t> greedy_linear_select(std::span<const std::vector<Rational>> vectors);

}  // namespace bvlab
