#include <doctest.h>

#include "bvlab/oracle.hpp"
#include "bvlab/reductions.hpp"
#include "support.hpp"

using namespace bvlab;

namespace {

DigraphInstance graph_of(const RatMatrix& a) { return DigraphInstance::from_adjacency(a); }

const RatMatrix kPath3 = RatMatrix::from_rows({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
const RatMatrix kTriangle = RatMatrix::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
const RatMatrix kK4 = RatMatrix::ones(4, 4) - RatMatrix::identity(4);

}  // namespace

TEST_CASE("subgi pairs") {
  const auto g = graph_of(RatMatrix::from_rows({{0, 1}, {1, 0}}));
  const auto s = graph_of(RatMatrix::from_rows({{0, 1}, {0, 0}}));
  auto p = build_subgi_pair(g, s, Relation::Cover);
  CHECK(p.G == RatMatrix::from_rows({{0, 1}, {1, 0}}));
  CHECK(p.S == RatMatrix::from_rows({{0, 1}, {0, 0}}));
  CHECK(p.m == 2);

  p = build_subgi_pair(g, g, Relation::Equal);
  CHECK(p.relation == Relation::Equal);
  CHECK(testsupport::eq1_by_enumeration(p));

  p = build_subgi_pair(graph_of(kPath3), graph_of(kTriangle), Relation::Cover);
  CHECK_FALSE(testsupport::eq1_by_enumeration(p));

  CHECK_THROWS(build_subgi_pair(graph_of(RatMatrix(1, 1)), g, Relation::Cover));
  CHECK_THROWS(build_subgi_pair(graph_of(kPath3), g, Relation::Equal));
}

TEST_CASE("catalog patterns") {
  CHECK(build_clique_pattern(2) == RatMatrix::from_rows({{0, 1}, {1, 0}}));
  CHECK(build_clique_pattern(3) == kTriangle);
  CHECK(testsupport::eq1_by_enumeration(build_clique_pair(graph_of(kK4), 3)));

  CHECK(build_hc_pattern(3) == RatMatrix::from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}));
  CHECK(build_hp_pattern(3) == RatMatrix::from_rows({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}));
  CHECK_THROWS(build_hc_pattern(1));
  CHECK_THROWS(build_hp_pattern(1));

  const auto cycle = graph_of(RatMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
  CHECK(testsupport::eq1_by_enumeration(build_hc_pair(cycle)));
  CHECK_FALSE(testsupport::eq1_by_enumeration(build_hc_pair(graph_of(kPath3))));

  CHECK(build_matching_pattern(2, false, 2) == RatMatrix::from_rows({{0, 1}, {0, 0}}));
  const RatMatrix m4 = build_matching_pattern(4, false, 4);
  CHECK(m4.sum() == 2);
  CHECK(m4(0, 1) == 1);
  CHECK(m4(2, 3) == 1);
  CHECK_THROWS(build_matching_pattern(3, false, 4));
  CHECK_THROWS(build_matching_pattern(2, true, 4));

  const auto two_arcs = graph_of(RatMatrix::from_rows({{0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}}));
  CHECK(testsupport::eq1_by_enumeration(build_matching_pair(two_arcs, 4, false)));
}

TEST_CASE("3-SAT boxes") {
  CnfFormula f;
  f.num_vars = 3;
  f.clauses = {{1, 2, 3}};
  const auto r = build_ksat_pair(f, 3);
  CHECK(r.pair.G == RatMatrix::identity(8));
  RatMatrix s(8, 8);
  s(0, 0) = 1;
  CHECK(r.pair.S == s);
  CHECK(testsupport::eq1_by_enumeration(r.pair));
  CHECK(subgi_oracle(r.pair).yes);

  CnfFormula two;
  two.num_vars = 1;
  two.clauses = {{1}, {-1}};
  CHECK_THROWS(build_ksat_pair(two, 2));
  const auto padded = build_ksat_pair(normalize_clause_width(two, 2), 2);
  CHECK_FALSE(subgi_oracle(padded.pair).yes);
  CHECK_FALSE(testsupport::sat_by_enumeration(two));

  // T(i,a,j,b) = T(j,b,i,a)
  const auto big = build_ksat_pair(gen_random_cnf(4, 4, 3, 17), 3);
  CHECK(big.pair.G == big.pair.G.transpose());
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(big.compat.boxes[i][j] == big.compat.boxes[j][i].transpose());
  for (std::size_t i = 0; i < 4; ++i) CHECK(big.compat.boxes[i][i] == RatMatrix::identity(8));
}

TEST_CASE("general SAT literal boxes") {
  CnfFormula f;
  f.num_vars = 1;
  f.clauses = {{1}, {-1}};
  auto r = build_sat_pair(f);
  CHECK(r.compat.boxes[0][1] == RatMatrix(1, 1));
  CHECK_FALSE(subgi_oracle(r.pair).yes);

  f.num_vars = 2;
  f.clauses = {{1}, {1, 2}};
  r = build_sat_pair(f);
  CHECK(r.compat.boxes[0][1] == RatMatrix::from_rows({{1, 1}}));
  CHECK(subgi_oracle(r.pair).yes);
  CHECK(testsupport::sat_by_enumeration(f));

  r = build_sat_pair(gen_random_cnf(4, 4, 2, 3));
  CHECK(r.pair.G.is_zero_one());
  for (std::size_t i = 0; i < 4; ++i) CHECK(r.compat.boxes[i][i] == RatMatrix::identity(r.compat.box_sizes[i]));

  CnfFormula empty_clause;
  empty_clause.num_vars = 1;
  empty_clause.clauses = {{1}, {}};
  CHECK_THROWS(build_sat_pair(empty_clause));
}

TEST_CASE("padding") {
  InstancePair p{RatMatrix::from_rows({{0, 1}, {1, 0}}), RatMatrix(1, 1), 1, Relation::Cover, "subgi"};
  const auto q = pad_pattern(p);
  CHECK(q.S == RatMatrix(2, 2));
  CHECK(q.m == 2);
  CHECK(pad_pattern(q).S == q.S);

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = gen_random_digraph(4, Rational(1, 2), seed, {true, false});
    const auto s = gen_random_digraph(1 + seed % 4, Rational(1, 3), seed + 100, {true, false});
    const auto pair = build_subgi_pair(g, s, Relation::Cover);
    CHECK(testsupport::eq1_by_enumeration(pair) == testsupport::eq1_by_enumeration(pad_pattern(pair)));
  }
}

TEST_CASE("pair JSON round trip") {
  const auto p = build_clique_pair(graph_of(kK4), 3);
  const auto q = pair_from_json(json::parse(pair_to_json(p).dump()));
  CHECK(q.G == p.G);
  CHECK(q.S == p.S);
  CHECK(q.m == p.m);
  CHECK(q.relation == p.relation);
  CHECK(q.provenance == p.provenance);
}
