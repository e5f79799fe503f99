#include "bvlab/incidence.hpp"

#include <stdexcept>

#include "bvlab/reductions.hpp"

namespace bvlab {

ordered_json incidence_to_json(const IncidencePair& p) {
  ordered_json out;
  out["O"] = matrix_to_json(p.out);
  out["I"] = matrix_to_json(p.in);
  ordered_json labels = ordered_json::array();
  for (const auto& l : p.labels) labels.push_back({l.row + 1, l.col + 1, l.copy + 1});
  out["arc_labels"] = std::move(labels);
  return out;
}

IncidencePair incidence_from_json(const json& j) {
  IncidencePair p;
  p.out = matrix_from_json(j.at("O"));
  p.in = matrix_from_json(j.at("I"));
  for (const auto& l : j.at("arc_labels")) {
    p.labels.push_back({l.at(0).get<std::size_t>() - 1, l.at(1).get<std::size_t>() - 1,
                        l.at(2).get<std::size_t>() - 1});
  }
  if (p.out.cols() != p.labels.size() || p.in.cols() != p.labels.size()) {
    throw std::invalid_argument("incidence JSON: label count differs from factor columns");
  }
  return p;
}

IncidencePair incidence_decompose(const RatMatrix& m) {
  if (!m.is_nonneg_integer()) throw std::invalid_argument("incidence_decompose: entries must be nonnegative integers");
  IncidencePair p;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const unsigned long copies = m(i, j).get_num().get_ui();
      for (unsigned long c = 0; c < copies; ++c) p.labels.push_back({i, j, c});
    }
  }
  const std::size_t k = p.labels.size();
  p.out = RatMatrix(m.rows(), k);
  p.in = RatMatrix(m.cols(), k);
  for (std::size_t a = 0; a < k; ++a) {
    p.out(p.labels[a].row, a) = 1;
    p.in(p.labels[a].col, a) = 1;
  }
  return p;
}

IncidenceStructure check_incidence_structure(const IncidencePair& p) {
  IncidenceStructure s;
  auto single_one = [](const RatMatrix& f, std::size_t col) {
    std::size_t ones = 0;
    for (std::size_t i = 0; i < f.rows(); ++i) {
      if (f(i, col) == 1) {
        ++ones;
      } else if (f(i, col) != 0) {
        return false;
      }
    }
    return ones == 1;
  };
  s.one_per_column = p.out.cols() == p.in.cols();
  for (std::size_t c = 0; s.one_per_column && c < p.out.cols(); ++c) {
    s.one_per_column = single_one(p.out, c) && single_one(p.in, c);
  }
  const std::size_t n = std::max(p.out.rows(), p.in.rows());
  for (std::size_t v = 0; v < n; ++v) {
    const bool no_out = v >= p.out.rows() || p.out.row_sum(v) == 0;
    const bool no_in = v >= p.in.rows() || p.in.row_sum(v) == 0;
    if (no_out) s.sinks.push_back(v);
    if (no_in) s.sources.push_back(v);
    if (no_out && no_in) s.isolated.push_back(v);
  }
  return s;
}

IncidencePair hc_incidence_pattern(std::size_t n) {
  IncidencePair p;
  p.out = build_hc_pattern(n);
  p.in = RatMatrix::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t source = j + 1 < n ? j + 1 : 0;
    p.labels.push_back({source, j, 0});
  }
  return p;
}

RatMatrix truncation(std::size_t l, std::size_t k) {
  if (l > k) throw std::invalid_argument("truncation: l exceeds k");
  RatMatrix p(l, k);
  for (std::size_t i = 0; i < l; ++i) p(i, i) = 1;
  return p;
}

bool check_quadratic_condition(const RatMatrix& z, std::size_t l) {
  if (!z.is_square()) throw std::invalid_argument("check_quadratic_condition: Z must be square");
  const std::size_t k = z.rows();
  const RatMatrix p = truncation(l, k);
  const RatMatrix product = z * p.transpose() * p * z.transpose();
  return product.leq(RatMatrix::identity(k));
}

}  // namespace bvlab
