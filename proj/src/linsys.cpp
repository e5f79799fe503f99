#include <stdexcept>

#include "bvlab/solve.hpp"

namespace bvlab {

SolveOutcome linsys_solve(const RatMatrix& a, const std::vector<Rational>& b) {
  const std::size_t m = a.rows();
  const std::size_t p = a.cols();
  if (b.size() != m) throw std::invalid_argument("linsys_solve: right side length differs from row count");

  // Rows of [A | b | I]; the identity part tracks which combination of original rows each row is.
  const std::size_t width = p + 1 + m;
  std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(width));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < p; ++j) rows[i][j] = a(i, j);
    rows[i][p] = b[i];
    rows[i][p + 1 + i] = 1;
  }

  SolveOutcome out;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  Rational f;
  for (std::size_t col = 0; col < p && rank < m; ++col) {
    std::size_t sel = rank;
    while (sel < m && rows[sel][col] == 0) ++sel;
    if (sel == m) continue;
    std::swap(rows[sel], rows[rank]);
    std::vector<Rational>& pr = rows[rank];
    const Rational inv = 1 / pr[col];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < width; ++j) {
      if (pr[j] != 0) {
        pr[j] *= inv;
        nz.push_back(j);
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      f = rows[i][col];
      for (std::size_t j : nz) rows[i][j] -= f * pr[j];
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  out.iterations = rank;

  for (std::size_t i = rank; i < m; ++i) {
    if (rows[i][p] != 0) {
      out.status = SolveStatus::Infeasible;
      out.certificate.assign(rows[i].begin() + static_cast<std::ptrdiff_t>(p + 1), rows[i].end());
      return out;
    }
  }
  out.status = SolveStatus::Feasible;
  out.witness.assign(p, 0);
  for (std::size_t r = 0; r < rank; ++r) out.witness[pivot_cols[r]] = rows[r][p];

  for (std::size_t i = 0; i < m; ++i) {
    Rational v = 0;
    for (std::size_t j = 0; j < p; ++j) v += a(i, j) * out.witness[j];
    if (v != b[i]) throw std::logic_error("linsys_solve: solution failed substitution check");
  }
  return out;
}

}  // namespace bvlab
