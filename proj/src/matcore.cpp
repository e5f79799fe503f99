#include "bvlab/matcore.hpp"

#include <algorithm>
#include <stdexcept>

#include "bvlab/echelon.hpp"

namespace bvlab {

namespace {

void require_square(const RatMatrix& m, const char* what) {
  if (!m.is_square()) throw std::invalid_argument(std::string(what) + ": matrix is not square");
}

void require_doubly_stochastic(const RatMatrix& x, const char* what) {
  require_square(x, what);
  if (!is_doubly_stochastic(x)) {
    throw std::invalid_argument(std::string(what) + ": input is not doubly stochastic");
  }
}

// Kuhn augmenting-path matching restricted to the allowed rows/columns of a support mask.
class SupportMatcher {
 public:
  SupportMatcher(const std::vector<std::vector<bool>>& support, const std::vector<bool>& row_free,
                 const std::vector<bool>& col_free)
      : support_(support), row_free_(row_free), col_free_(col_free), match_col_(support.size(), npos) {}

  bool perfect() {
    const std::size_t n = support_.size();
    for (std::size_t r = 0; r < n; ++r) {
      if (!row_free_[r]) continue;
      visited_.assign(n, false);
      if (!augment(r)) return false;
    }
    return true;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  bool augment(std::size_t r) {
    for (std::size_t c = 0; c < support_.size(); ++c) {
      if (!col_free_[c] || !support_[r][c] || visited_[c]) continue;
      visited_[c] = true;
      if (match_col_[c] == npos || augment(match_col_[c])) {
        match_col_[c] = r;
        return true;
      }
    }
    return false;
  }

  const std::vector<std::vector<bool>>& support_;
  const std::vector<bool>& row_free_;
  const std::vector<bool>& col_free_;
  std::vector<std::size_t> match_col_;
  std::vector<bool> visited_;
};

// Extraction on the nonzero pattern only; the caller guarantees a perfect matching exists.
Extraction extract_on_support(const RatMatrix& x) {
  const std::size_t n = x.rows();
  std::vector<std::vector<bool>> support(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) support[i][j] = x(i, j) != 0;

  std::vector<bool> row_free(n, true);
  std::vector<bool> col_free(n, true);
  std::vector<std::size_t> image(n);
  Extraction out;
  for (std::size_t i = 0; i < n; ++i) {
    row_free[i] = false;
    bool placed = false;
    for (std::size_t j = 0; j < n && !placed; ++j) {
      if (!support[i][j] || !col_free[j]) continue;
      col_free[j] = false;
      if (SupportMatcher(support, row_free, col_free).perfect()) {
        image[i] = j;
        out.cells.emplace_back(i, j);
        placed = true;
      } else {
        col_free[j] = true;
      }
    }
    if (!placed) throw std::logic_error("bvn extraction: support has no perfect matching");
  }
  out.perm = PermMatrix(std::move(image));
  return out;
}

}  // namespace

SubstochasticReport is_doubly_substochastic(const RatMatrix& m) {
  require_square(m, "is_doubly_substochastic");
  SubstochasticReport report;
  report.nonnegative = m.is_nonnegative();
  report.ok = report.nonnegative;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    report.row_slack.push_back(1 - m.row_sum(i));
    if (report.row_slack.back() < 0) report.ok = false;
  }
  for (std::size_t j = 0; j < m.cols(); ++j) {
    report.col_slack.push_back(1 - m.col_sum(j));
    if (report.col_slack.back() < 0) report.ok = false;
  }
  return report;
}

bool is_doubly_stochastic(const RatMatrix& m) {
  if (!m.is_square() || !m.is_nonnegative()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.row_sum(i) != 1 || m.col_sum(i) != 1) return false;
  }
  return true;
}

Rational euclidean_norm_sq(const RatMatrix& m) {
  Rational s = 0;
  for (const auto& e : m.entries()) s += e * e;
  return s;
}

Extraction bvn_extract_permutation(const RatMatrix& x) {
  require_doubly_stochastic(x, "bvn_extract_permutation");
  return extract_on_support(x);
}

RatMatrix BvnDecomposition::reconstruct() const {
  if (terms.empty()) return {};
  RatMatrix sum(terms.front().perm.size(), terms.front().perm.size());
  for (const auto& t : terms) sum += t.coefficient * t.perm.to_matrix();
  return sum;
}

BvnDecomposition bvn_decompose(const RatMatrix& x) {
  require_doubly_stochastic(x, "bvn_decompose");
  const std::size_t n = x.rows();
  BvnDecomposition out;
  RatMatrix residual = x;
  Rational mass = 1;
  // Each round zeroes at least one support cell, so n^2 rounds always suffice.
  for (std::size_t round = 0; mass != 0 && round <= n * n; ++round) {
    Extraction e = extract_on_support(residual);
    Rational lambda = residual(e.cells.front().first, e.cells.front().second);
    for (const auto& [i, j] : e.cells) lambda = std::min(lambda, residual(i, j));
    for (const auto& [i, j] : e.cells) residual(i, j) -= lambda;
    mass -= lambda;
    out.terms.push_back({lambda, std::move(e.perm)});
  }
  if (mass != 0) throw std::logic_error("bvn_decompose: did not terminate");
  const std::size_t bound = (n - 1) * (n - 1) + 1;
  if (out.terms.size() > bound) throw std::logic_error("bvn_decompose: term count exceeds (n-1)^2+1");
  return out;
}

RatMatrix complete_to_doubly_stochastic(const RatMatrix& w) {
  const auto report = is_doubly_substochastic(w);
  if (!report.ok) throw std::invalid_argument("complete_to_doubly_stochastic: input is not doubly substochastic");
  RatMatrix out = w;
  std::vector<Rational> row_def = report.row_slack;
  std::vector<Rational> col_def = report.col_slack;
  std::size_t i = 0;
  std::size_t j = 0;
  const std::size_t n = w.rows();
  while (i < n && j < n) {
    if (row_def[i] == 0) {
      ++i;
      continue;
    }
    if (col_def[j] == 0) {
      ++j;
      continue;
    }
    const Rational amount = std::min(row_def[i], col_def[j]);
    out(i, j) += amount;
    row_def[i] -= amount;
    col_def[j] -= amount;
  }
  return out;
}

std::vector<PermMatrix> greedy_affine_basis(const std::vector<PermMatrix>& family) {
  if (family.empty()) throw std::invalid_argument("greedy_affine_basis: empty family");
  const std::size_t n = family.front().size();
  std::vector<std::vector<Rational>> vectors;
  vectors.reserve(family.size());
  for (const auto& p : family) {
    if (p.size() != n) throw std::invalid_argument("greedy_affine_basis: mixed sizes");
    vectors.push_back(vectorize(p.to_matrix()));
  }
  std::vector<PermMatrix> kept;
  for (std::size_t idx : greedy_affine_select(vectors)) kept.push_back(family[idx]);
  return kept;
}

}  // namespace bvlab
