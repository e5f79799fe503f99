#include <doctest.h>

#include <random>

#include "bvlab/models.hpp"
#include "bvlab/norm_decide.hpp"
#include "bvlab/oracle.hpp"
#include "bvlab/perm_search.hpp"
#include "bvlab/solve.hpp"
#include "support.hpp"

using namespace bvlab;

namespace {

const RatMatrix kSwap = RatMatrix::from_rows({{0, 1}, {1, 0}});

ConstraintSystem one_var(std::vector<std::tuple<Rational, Sense, Rational>> rows, std::optional<bool> maximize) {
  ConstraintSystem::Builder b;
  b.add_block("x", 1, 1);
  for (auto& [c, s, r] : rows) b.add_row({{0, c}}, s, r);
  if (maximize) b.set_objective({*maximize, {{0, 1}}});
  return b.build();
}

// Maximum of c.x over a bounded polygon by checking every pairwise line intersection.
std::optional<Rational> polygon_max(const std::vector<std::array<Rational, 3>>& le, const std::array<Rational, 2>& c) {
  std::optional<Rational> best;
  for (std::size_t i = 0; i < le.size(); ++i)
    for (std::size_t j = i + 1; j < le.size(); ++j) {
      const auto& p = le[i];
      const auto& q = le[j];
      const Rational det = p[0] * q[1] - p[1] * q[0];
      if (det == 0) continue;
      const Rational x = (p[2] * q[1] - p[1] * q[2]) / det;
      const Rational y = (p[0] * q[2] - p[2] * q[0]) / det;
      bool ok = true;
      for (const auto& r : le) ok = ok && r[0] * x + r[1] * y <= r[2];
      if (!ok) continue;
      const Rational v = c[0] * x + c[1] * y;
      if (!best || v > *best) best = v;
    }
  return best;
}

}  // namespace

TEST_CASE("simplex examples") {
  auto out = lp_solve(one_var({{1, Sense::Le, 1}}, true));
  CHECK(out.status == SolveStatus::Optimal);
  CHECK(out.witness[0] == 1);
  CHECK(*out.objective == 1);

  out = lp_solve(one_var({{1, Sense::Eq, 1}, {1, Sense::Eq, 2}}, std::nullopt));
  CHECK(out.status == SolveStatus::Infeasible);

  out = lp_solve(one_var({{1, Sense::Ge, 1}}, true));
  CHECK(out.status == SolveStatus::Unbounded);

  out = lp_solve(one_var({{2, Sense::Ge, 1}}, false));
  CHECK(out.status == SolveStatus::Optimal);
  CHECK(*out.objective == Rational(1, 2));

  const InstancePair ex1{kSwap, RatMatrix::identity(2), 2, Relation::Cover, "subgi"};
  out = lp_solve(build_relaxation(ex1, Side::Left));
  CHECK(out.status == SolveStatus::Feasible);
}

TEST_CASE("free variables and negative right-hand sides") {
  ConstraintSystem::Builder b;
  b.add_block("y", 1, 2, false);
  b.add_row({{0, 1}, {1, 1}}, Sense::Eq, -3);
  b.add_row({{0, 1}}, Sense::Ge, -5);
  b.set_objective({false, {{0, 1}, {1, 2}}});
  const auto sys = b.build();
  // along y0 + y1 = -3 the objective is -6 - y0, and y0 may grow without bound
  CHECK(lp_solve(sys).status == SolveStatus::Unbounded);

  ConstraintSystem::Builder c;
  c.add_block("y", 1, 2, false);
  c.add_row({{0, 1}, {1, 1}}, Sense::Eq, -3);
  c.add_row({{0, 1}}, Sense::Le, -5);
  c.set_objective({false, {{0, 1}, {1, 2}}});
  const auto out = lp_solve(c.build());
  REQUIRE(out.status == SolveStatus::Optimal);
  CHECK(out.witness == std::vector<Rational>{-5, 2});
  CHECK(*out.objective == -1);
}

TEST_CASE("simplex agrees with vertex enumeration on random polygons") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 120; ++t) {
    std::vector<std::array<Rational, 3>> le{{1, 0, 5}, {0, 1, 5}, {-1, 0, 0}, {0, -1, 0}};
    ConstraintSystem::Builder b;
    b.add_block("x", 1, 2);
    b.add_row({{0, 1}}, Sense::Le, 5);
    b.add_row({{1, 1}}, Sense::Le, 5);
    const int extra = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < extra; ++k) {
      const Rational a = static_cast<long>(rng() % 7) - 3, c = static_cast<long>(rng() % 7) - 3,
                     r = static_cast<long>(rng() % 9) - 2;
      le.push_back({a, c, r});
      b.add_row({{0, a}, {1, c}}, Sense::Le, r);
    }
    const std::array<Rational, 2> obj{static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % 5) - 2};
    b.set_objective({true, {{0, obj[0]}, {1, obj[1]}}});
    const auto out = lp_solve(b.build());
    const auto best = polygon_max(le, obj);
    if (!best) {
      CHECK(out.status == SolveStatus::Infeasible);
    } else {
      REQUIRE(out.status == SolveStatus::Optimal);
      CHECK(*out.objective == *best);
    }
  }
}

TEST_CASE("linear systems") {
  auto out = linsys_solve(RatMatrix::identity(3), {1, Rational(-2, 3), 5});
  REQUIRE(out.status == SolveStatus::Feasible);
  CHECK(out.witness == std::vector<Rational>{1, Rational(-2, 3), 5});

  out = linsys_solve(RatMatrix(1, 1), {1});
  REQUIRE(out.status == SolveStatus::Infeasible);
  REQUIRE(out.certificate.size() == 1);
  CHECK(out.certificate[0] != 0);

  const RatMatrix a = RatMatrix::from_rows({{1, 1}, {2, 2}});
  out = linsys_solve(a, {1, 3});
  REQUIRE(out.status == SolveStatus::Infeasible);
  // y^T A = 0 and y^T b != 0
  CHECK(out.certificate[0] * 1 + out.certificate[1] * 2 == 0);
  CHECK(out.certificate[0] * 1 + out.certificate[1] * 3 != 0);

  out = linsys_solve(a, {1, 2});
  REQUIRE(out.status == SolveStatus::Feasible);
  CHECK(out.witness[0] + out.witness[1] == 1);
}

TEST_CASE("norm decision examples") {
  const InstancePair ex1{kSwap, RatMatrix::identity(2), 2, Relation::Cover, "subgi"};
  const auto cc = build_convex_check(ex1);
  CHECK(cc.target == 2);
  const auto d = norm_max_decide(cc.sys);
  CHECK(d.verdict == NormVerdict::No);
  REQUIRE(d.best_norm_sq);
  CHECK(*d.best_norm_sq == 1);

  const InstancePair same{kSwap, kSwap, 2, Relation::Cover, "subgi"};
  const auto y = norm_max_decide(build_convex_check(same).sys);
  CHECK(y.verdict == NormVerdict::Yes);
  CHECK(*y.best_norm_sq == 2);
  CHECK(block_norm_sq(build_convex_check(same).sys, y.witness) == 2);
}

TEST_CASE("norm decision and permutation search on random n=4 pairs") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = gen_random_digraph(4, bvlab::ratio(1 + seed % 3, 4), seed, {true, false});
    const auto s = gen_random_digraph(4, Rational(1, 4), seed + 500, {true, false});
    const auto pair = build_subgi_pair(g, s, Relation::Cover);
    const auto sys = build_convex_check(pair).sys;
    const auto d = norm_max_decide(sys);
    const bool oracle = testsupport::eq1_by_enumeration(pair);
    // at permutation points the relaxation is the matrix relation itself
    CHECK((d.verdict == NormVerdict::Yes) == oracle);
    for (std::size_t i = 1; i < d.heuristic_history.size(); ++i) CHECK(d.heuristic_history[i] >= d.heuristic_history[i - 1]);
    for (const auto& h : d.heuristic_history) CHECK(h <= d.target);
    if (!d.witness.empty()) CHECK(sys.satisfied_by(d.witness));

    PermSearchOptions ser, par;
    ser.parallel = false;
    const auto a = permutation_point_search(sys, ser);
    const auto b = permutation_point_search(sys, par);
    CHECK(a.status == b.status);
    CHECK(a.witness == b.witness);
  }
}

TEST_CASE("permutation search node cap") {
  // every permutation fits, but reaching one takes seven levels
  const InstancePair pair{RatMatrix::ones(7, 7), RatMatrix::ones(7, 7), 7, Relation::Cover, "subgi"};
  PermSearchOptions o;
  o.node_cap = 3;
  o.parallel = false;
  CHECK(permutation_point_search(build_relaxation(pair, Side::Left), o).status == SearchStatus::NodeLimit);
  NormOptions no;
  no.search = o;
  no.heuristic = false;
  CHECK(norm_max_decide(build_relaxation(pair, Side::Left), no).verdict == NormVerdict::IterationLimit);
}

TEST_CASE("outcome JSON names variables") {
  const auto out = lp_solve(one_var({{1, Sense::Le, 1}}, true));
  const auto sys = one_var({{1, Sense::Le, 1}}, true);
  const auto j = outcome_to_json(out, &sys);
  CHECK(j["status"] == "OPTIMAL");
  CHECK(j["witness"].contains("x[1]"));
}

TEST_CASE("system export layout") {
  const InstancePair ex1{kSwap, RatMatrix::identity(2), 2, Relation::Cover, "subgi"};
  const auto j = build_relaxation(ex1, Side::Left).to_json();
  CHECK(j.contains("vars"));
  CHECK(j.contains("eq"));
  CHECK(j.contains("le"));
  CHECK(j.contains("bounds"));
  CHECK(j["vars"].size() == 4);
  CHECK(j["le"].size() == 8);
}
