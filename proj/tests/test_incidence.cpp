#include <doctest.h>

#include <random>

#include "bvlab/incidence.hpp"
#include "bvlab/oracle.hpp"
#include "bvlab/reductions.hpp"

using namespace bvlab;

namespace {

const RatMatrix kSwap = RatMatrix::from_rows({{0, 1}, {1, 0}});

bool one_per_column(const RatMatrix& m) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m.col_sum(j) != 1 || !m.is_zero_one()) return false;
  return true;
}

}  // namespace

TEST_CASE("incidence decomposition examples") {
  auto p = incidence_decompose(kSwap);
  CHECK(p.out == RatMatrix::identity(2));
  CHECK(p.in == kSwap);
  CHECK(p.arcs() == 2);

  p = incidence_decompose(RatMatrix::from_rows({{2}}));
  CHECK(p.out == RatMatrix::from_rows({{1, 1}}));
  CHECK(p.in == RatMatrix::from_rows({{1, 1}}));
  CHECK(p.out * p.in.transpose() == RatMatrix::from_rows({{2}}));
  CHECK(p.labels[0] == ArcLabel{0, 0, 0});
  CHECK(p.labels[1] == ArcLabel{0, 0, 1});

  p = incidence_decompose(RatMatrix(3, 3));
  CHECK(p.arcs() == 0);
  CHECK(p.out.cols() == 0);

  CHECK_THROWS(incidence_decompose(RatMatrix::from_rows({{-1}})));
  CHECK_THROWS(incidence_decompose(RatMatrix::from_rows({{Rational(1, 2)}})));
}

TEST_CASE("incidence identity on random matrices") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng() % 6;
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<long>(rng() % 4);
    const auto p = incidence_decompose(m);
    CHECK(p.arcs() == m.sum());
    if (p.arcs() > 0) {
      CHECK(p.out * p.in.transpose() == m);
      CHECK(one_per_column(p.out));
      CHECK(one_per_column(p.in));
    }
  }
}

TEST_CASE("incidence structure report") {
  auto r = check_incidence_structure(incidence_decompose(RatMatrix::from_rows({{0, 1}, {0, 0}})));
  CHECK(r.one_per_column);
  CHECK(r.sinks == std::vector<std::size_t>{1});
  CHECK(r.sources == std::vector<std::size_t>{0});
  CHECK(r.isolated.empty());

  r = check_incidence_structure(incidence_decompose(kSwap));
  CHECK(r.sinks.empty());
  CHECK(r.sources.empty());

  InstancePair p{kSwap, RatMatrix::from_rows({{0, 1}, {0, 0}}).padded(2, 2), 2, Relation::Cover, "subgi"};
  p.S = RatMatrix::from_rows({{1}});
  p.m = 1;
  const auto padded = pad_pattern(p);
  r = check_incidence_structure(incidence_decompose(padded.S));
  CHECK(r.isolated == std::vector<std::size_t>{1});
  CHECK(r.sinks == std::vector<std::size_t>{1});
  CHECK(r.sources == std::vector<std::size_t>{1});
}

TEST_CASE("Hamiltonian incidence pattern") {
  const auto p = hc_incidence_pattern(3);
  CHECK(p.out == RatMatrix::from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}));
  CHECK(p.in == RatMatrix::identity(3));
  CHECK(p.out * p.in.transpose() == build_hc_pattern(3));
  // arc c ends at vertex c and leaves vertex c + 1
  CHECK(p.labels[0] == ArcLabel{1, 0, 0});
  CHECK(p.labels[1] == ArcLabel{2, 1, 0});
  CHECK(p.labels[2] == ArcLabel{0, 2, 0});
  CHECK_THROWS(hc_incidence_pattern(1));
}

TEST_CASE("quadratic side condition") {
  CHECK(check_quadratic_condition(RatMatrix::identity(3), 3));
  CHECK(check_quadratic_condition(RatMatrix::identity(2), 1));
  CHECK_FALSE(check_quadratic_condition(Rational(1, 2) * RatMatrix::ones(2, 2), 2));
  CHECK_FALSE(check_quadratic_condition(RatMatrix::ones(2, 2), 2));
  for (const auto& z : all_permutations(3)) CHECK(check_quadratic_condition(z.to_matrix(), 3));
  CHECK_THROWS(check_quadratic_condition(RatMatrix::identity(2), 3));
}

TEST_CASE("two-vertex incidence example") {
  const auto g = incidence_decompose(kSwap);
  CHECK(g.out == RatMatrix::identity(2));
  CHECK(g.in == kSwap);
  const IncidencePair s{RatMatrix::from_rows({{1}}), RatMatrix::from_rows({{1}}), {{0, 0, 0}}};
  const RatMatrix x1 = kSwap, x2 = RatMatrix::identity(2);
  const RatMatrix p12 = truncation(1, 2);
  CHECK(p12 == RatMatrix::from_rows({{1, 0}}));
  CHECK(p12 * x1 * g.out * x1 * p12.transpose() == RatMatrix::from_rows({{1}}));
  CHECK(p12 * x1 * g.out * x2 * p12.transpose() == RatMatrix::from_rows({{0}}));
  CHECK(p12 * x1 * g.in * x1 * p12.transpose() == RatMatrix::from_rows({{0}}));
  // the last of the four products, read with I_G
  CHECK(p12 * x1 * g.in * x2 * p12.transpose() == RatMatrix::from_rows({{1}}));
  CHECK(p12 * x1 * g.out * x2 * p12.transpose() != RatMatrix::from_rows({{1}}));

  const PermMatrix X1({1, 0}), X2 = PermMatrix::identity(2);
  auto c = incidence_witness_check(g, s, X1, X1);
  CHECK(c.out_equation);
  CHECK_FALSE(c.in_equation);
  CHECK_FALSE(c.holds());
  c = incidence_witness_check(g, s, X1, X2);
  CHECK_FALSE(c.out_equation);
  CHECK(c.in_equation);
  CHECK_FALSE(c.holds());
}

TEST_CASE("incidence JSON round trip") {
  const auto p = incidence_decompose(RatMatrix::from_rows({{0, 2}, {1, 1}}));
  const auto q = incidence_from_json(json::parse(incidence_to_json(p).dump()));
  CHECK(q.out == p.out);
  CHECK(q.in == p.in);
  CHECK(q.labels == p.labels);
}
