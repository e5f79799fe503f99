#include "bvlab/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bvlab {

namespace {

void require_same_shape(const RatMatrix& a, const RatMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(what) + ": shape mismatch");
  }
}

}  // namespace

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw std::invalid_argument("RatMatrix: entry count does not match shape");
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::ones(std::size_t rows, std::size_t cols) {
  return RatMatrix(rows, cols, std::vector<Rational>(rows * cols, Rational(1)));
}

RatMatrix RatMatrix::from_rows(std::initializer_list<std::initializer_list<Rational>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Rational> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("from_rows: ragged rows");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return RatMatrix(r, c, std::move(entries));
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Rational RatMatrix::sum() const {
  Rational s = 0;
  for (const auto& e : entries_) s += e;
  return s;
}

Rational RatMatrix::row_sum(std::size_t i) const {
  Rational s = 0;
  for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j);
  return s;
}

Rational RatMatrix::col_sum(std::size_t j) const {
  Rational s = 0;
  for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, j);
  return s;
}

bool RatMatrix::geq(const RatMatrix& other) const {
  require_same_shape(*this, other, "geq");
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (entries_[k] < other.entries_[k]) return false;
  }
  return true;
}

bool RatMatrix::is_nonnegative() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rational& e) { return sgn(e) >= 0; });
}

bool RatMatrix::is_nonneg_integer() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Rational& e) { return sgn(e) >= 0 && is_integer(e); });
}

bool RatMatrix::is_zero_one() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rational& e) { return e == 0 || e == 1; });
}

RatMatrix RatMatrix::top_left(std::size_t rows, std::size_t cols) const {
  if (rows > rows_ || cols > cols_) throw std::invalid_argument("top_left: block exceeds matrix");
  RatMatrix b(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) b(i, j) = (*this)(i, j);
  return b;
}

RatMatrix RatMatrix::padded(std::size_t rows, std::size_t cols) const {
  if (rows < rows_ || cols < cols_) throw std::invalid_argument("padded: target smaller than matrix");
  RatMatrix p(rows, cols);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) p(i, j) = (*this)(i, j);
  return p;
}

RatMatrix& RatMatrix::operator+=(const RatMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

RatMatrix& RatMatrix::operator-=(const RatMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

RatMatrix& RatMatrix::operator*=(const Rational& s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

RatMatrix operator+(RatMatrix a, const RatMatrix& b) { return a += b; }
RatMatrix operator-(RatMatrix a, const RatMatrix& b) { return a -= b; }
RatMatrix operator*(const Rational& s, RatMatrix a) { return a *= s; }

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("operator*: inner dimensions differ");
  RatMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t t = 0; t < a.cols(); ++t) {
      const Rational& ait = a(i, t);
      if (ait == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b(t, j) != 0) c(i, j) += ait * b(t, j);
      }
    }
  }
  return c;
}

RatMatrix vstack(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column counts differ");
  std::vector<Rational> entries(a.entries().begin(), a.entries().end());
  entries.insert(entries.end(), b.entries().begin(), b.entries().end());
  return RatMatrix(a.rows() + b.rows(), a.cols(), std::move(entries));
}

std::vector<Rational> vectorize(const RatMatrix& m) { return {m.entries().begin(), m.entries().end()}; }

std::string to_string(const RatMatrix& m) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? ", " : "") << m(i, j).get_str();
    out << ']';
  }
  out << ']';
  return out.str();
}

PermMatrix::PermMatrix(std::vector<std::size_t> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (std::size_t v : image_) {
    if (v >= image_.size() || seen[v]) throw std::invalid_argument("PermMatrix: image is not a bijection");
    seen[v] = true;
  }
}

PermMatrix PermMatrix::identity(std::size_t n) {
  std::vector<std::size_t> image(n);
  std::iota(image.begin(), image.end(), std::size_t{0});
  return PermMatrix(std::move(image));
}

std::optional<PermMatrix> PermMatrix::from_matrix(const RatMatrix& m) {
  if (!m.is_square() || !m.is_zero_one()) return std::nullopt;
  const std::size_t n = m.rows();
  std::vector<std::size_t> image(n);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t count = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (m(i, j) == 1) {
        image[i] = j;
        ++count;
      }
    }
    if (count != 1 || used[image[i]]) return std::nullopt;
    used[image[i]] = true;
  }
  return PermMatrix(std::move(image));
}

PermMatrix PermMatrix::inverse() const {
  std::vector<std::size_t> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = i;
  return PermMatrix(std::move(inv));
}

RatMatrix PermMatrix::to_matrix() const {
  RatMatrix m(size(), size());
  for (std::size_t i = 0; i < size(); ++i) m(i, image_[i]) = 1;
  return m;
}

std::vector<PermMatrix> all_permutations(std::size_t n) {
  std::vector<std::size_t> image(n);
  std::iota(image.begin(), image.end(), std::size_t{0});
  std::vector<PermMatrix> out;
  do {
    out.emplace_back(image);
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

std::uint64_t factorial_capped(std::size_t n, std::uint64_t cap) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    f *= i;
    if (f > cap) throw CapExceeded(std::to_string(n) + "! exceeds cap " + std::to_string(cap));
  }
  if (f > cap) throw CapExceeded(std::to_string(n) + "! exceeds cap " + std::to_string(cap));
  return f;
}

}  // namespace bvlab
