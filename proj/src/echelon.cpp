#include "bvlab/echelon.hpp"

#include <stdexcept>

namespace bvlab {

std::vector<Rational> EchelonBasis::reduce(std::vector<Rational> v) const {
  if (v.size() != dim_) throw std::invalid_argument("EchelonBasis: vector length differs from dimension");
  Rational factor;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (v[pivots_[r]] == 0) continue;
    factor = v[pivots_[r]];
    for (const auto& [col, value] : rows_[r]) v[col] -= factor * value;
  }
  return v;
}

bool EchelonBasis::contains(std::span<const Rational> v) const {
  const auto residual = reduce(std::vector<Rational>(v.begin(), v.end()));
  for (const auto& e : residual) {
    if (e != 0) return false;
  }
  return true;
}

bool EchelonBasis::insert(std::vector<Rational> v) {
  v = reduce(std::move(v));
  std::size_t pivot = dim_;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (v[i] != 0) {
      pivot = i;
      break;
    }
  }
  if (pivot == dim_) return false;
  const Rational inv = 1 / v[pivot];
  SparseRow row;
  for (std::size_t i = pivot; i < dim_; ++i) {
    if (v[i] != 0) row.emplace_back(i, v[i] * inv);
  }
  rows_.push_back(std::move(row));
  pivots_.push_back(pivot);
  return true;
}

std::size_t exact_rank(std::span<const std::vector<Rational>> vectors) {
  if (vectors.empty()) return 0;
  EchelonBasis basis(vectors.front().size());
  for (const auto& v : vectors) basis.insert(v);
  return basis.rank();
}

std::vector<std::size_t> greedy_affine_select(std::span<const std::vector<Rational>> vectors) {
  if (vectors.empty()) throw std::invalid_argument("greedy_affine_select: empty family");
  const auto& origin = vectors.front();
  EchelonBasis basis(origin.size());
  std::vector<std::size_t> kept{0};
  for (std::size_t i = 1; i < vectors.size(); ++i) {
    std::vector<Rational> diff(vectors[i]);
    for (std::size_t k = 0; k < diff.size(); ++k) diff[k] -= origin[k];
    if (basis.insert(std::move(diff))) kept.push_back(i);
  }
  return kept;
}

std::vector<std::size_t> greedy_linear_select(std::span<const std::vector<Rational>> vectors) {
  std::vector<std::size_t> kept;
  if (vectors.empty()) return kept;
  EchelonBasis basis(vectors.front().size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (basis.insert(vectors[i])) kept.push_back(i);
  }
  return kept;
}

}  // namespace bvlab
