#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bvlab/rational.hpp"

namespace bvlab {

/// Dense row-major matrix of exact rationals. Indices are 0-based.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  static RatMatrix identity(std::size_t n);
  static RatMatrix ones(std::size_t rows, std::size_t cols);
  /// Convenience for literals: RatMatrix::from_rows({{0, 1}, {1, 0}}).
  static RatMatrix from_rows(std::initializer_list<std::initializer_list<Rational>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return entries_.empty(); }

  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  std::span<const Rational> entries() const { return entries_; }

  RatMatrix transpose() const;
  Rational sum() const;
  Rational row_sum(std::size_t i) const;
  Rational col_sum(std::size_t j) const;

  /// Entrywise comparisons; shapes must agree.
  bool geq(const RatMatrix& other) const;
  bool leq(const RatMatrix& other) const { return other.geq(*this); }

  bool is_nonnegative() const;
  bool is_nonneg_integer() const;
  bool is_zero_one() const;

  /// Copy of the top-left rows x cols block.
  RatMatrix top_left(std::size_t rows, std::size_t cols) const;
  /// Zero-extended copy of shape rows x cols (rows >= this->rows(), same for cols).
  RatMatrix padded(std::size_t rows, std::size_t cols) const;

  RatMatrix& operator+=(const RatMatrix& other);
  RatMatrix& operator-=(const RatMatrix& other);
  RatMatrix& operator*=(const Rational& s);

  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

RatMatrix operator+(RatMatrix a, const RatMatrix& b);
RatMatrix operator-(RatMatrix a, const RatMatrix& b);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const Rational& s, RatMatrix a);

/// Stacks a on top of b; column counts must agree.
RatMatrix vstack(const RatMatrix& a, const RatMatrix& b);

/// Row-major flattening.
std::vector<Rational> vectorize(const RatMatrix& m);

std::string to_string(const RatMatrix& m);

/// Permutation matrix stored as its row images: the single 1 of row i sits in column image[i].
class PermMatrix {
 public:
  PermMatrix() = default;
  explicit PermMatrix(std::vector<std::size_t> image);

  static PermMatrix identity(std::size_t n);
  /// Returns the permutation if m is a 0/1 matrix with one 1 per row and column.
  static std::optional<PermMatrix> from_matrix(const RatMatrix& m);

  std::size_t size() const { return image_.size(); }
  std::size_t operator[](std::size_t row) const { return image_[row]; }
  const std::vector<std::size_t>& image() const { return image_; }

  PermMatrix inverse() const;
  RatMatrix to_matrix() const;

  friend bool operator==(const PermMatrix&, const PermMatrix&) = default;
  friend auto operator<=>(const PermMatrix&, const PermMatrix&) = default;

 private:
  std::vector<std::size_t> image_;
};

/// All n! permutations in lexicographic order of their image vectors.
std::vector<PermMatrix> all_permutations(std::size_t n);

/// n!, throwing CapExceeded when the value exceeds cap.
std::uint64_t factorial_capped(std::size_t n, std::uint64_t cap);

}  // namespace bvlab
