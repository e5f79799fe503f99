#include <doctest.h>

#include <algorithm>
#include <functional>

#include "bvlab/echelon.hpp"
#include "bvlab/incidence_models.hpp"
#include "bvlab/matcore.hpp"
#include "bvlab/models.hpp"
#include "bvlab/norm_decide.hpp"
#include "bvlab/oracle.hpp"
#include "bvlab/procedures.hpp"
#include "support.hpp"

using namespace bvlab;

namespace {

const RatMatrix kSwap = RatMatrix::from_rows({{0, 1}, {1, 0}});
const RatMatrix kCycle3 = RatMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
const RatMatrix kPath3 = RatMatrix::from_rows({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
const RatMatrix kK4 = RatMatrix::ones(4, 4) - RatMatrix::identity(4);

InstancePair swap_over_identity() { return {kSwap, RatMatrix::identity(2), 2, Relation::Cover, "subgi"}; }

InstancePair random_pair(std::uint64_t seed, std::size_t n) {
  const auto g = gen_random_digraph(n, bvlab::ratio(1 + seed % 3, 4), seed, {true, false});
  const auto s = gen_random_digraph(1 + seed % n, Rational(1, 4), seed + 777, {true, false});
  return pad_pattern(build_subgi_pair(g, s, Relation::Cover));
}

std::vector<Rational> perm_point(const ConstraintSystem& sys, const PermMatrix& p) {
  std::vector<Rational> x(sys.num_vars());
  const auto& b = sys.block("x");
  for (std::size_t i = 0; i < p.size(); ++i) x[b.index(i, p[i])] = 1;
  return x;
}

bool feasible(const ConstraintSystem& sys) { return lp_solve(sys).compatible(); }

}  // namespace

TEST_CASE("relaxation examples") {
  const auto ex1 = swap_over_identity();
  const auto half = vectorize(testsupport::half_ones(2));
  CHECK(build_relaxation(ex1, Side::Left).satisfied_by(half));
  CHECK(build_relaxation(ex1, Side::Right).satisfied_by(half));
  // the three displayed products
  const RatMatrix h = testsupport::half_ones(2);
  CHECK(ex1.S * h == h);
  CHECK(h * ex1.S == h);
  CHECK(ex1.G * h == h);
  CHECK(h * ex1.G == h);

  const InstancePair same{kCycle3, kCycle3, 3, Relation::Cover, "subgi"};
  const auto sys = build_relaxation(same, Side::Left);
  CHECK(sys.satisfied_by(perm_point(sys, PermMatrix::identity(3))));

  RatMatrix s(2, 2);
  s(0, 1) = 1;
  const InstancePair empty_host{RatMatrix(2, 2), s, 2, Relation::Cover, "subgi"};
  const auto es = build_relaxation(empty_host, Side::Left);
  for (const auto& p : all_permutations(2)) CHECK_FALSE(es.satisfied_by(perm_point(es, p)));
  CHECK(lp_solve(es).status == SolveStatus::Feasible);  // X = 0

  const InstancePair unpadded{kSwap, RatMatrix(1, 1), 1, Relation::Cover, "subgi"};
  CHECK_THROWS(build_relaxation(unpadded, Side::Left));
}

TEST_CASE("convex check examples") {
  auto d = norm_max_decide(build_convex_check(swap_over_identity()).sys);
  CHECK(d.verdict == NormVerdict::No);
  CHECK(*d.best_norm_sq == 1);
  const InstancePair cyc{kCycle3, kCycle3, 3, Relation::Cover, "subgi"};
  const auto cc = build_convex_check(cyc);
  CHECK(cc.target == 3);
  d = norm_max_decide(cc.sys);
  CHECK(d.verdict == NormVerdict::Yes);
  CHECK(block_norm_sq(cc.sys, d.witness) == 3);
}

TEST_CASE("anchored systems") {
  for (const auto& r : all_permutations(2)) CHECK_FALSE(feasible(build_anchored_system(swap_over_identity(), r)));

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto pair = random_pair(seed, 4);
    const auto v = subgi_oracle(pair);
    if (v.yes) {
      const auto sys = build_anchored_system(pair, *v.perm);
      const auto out = lp_solve(sys);
      REQUIRE(out.compatible());
      CHECK(sys.block_values("x", out.witness) == v.perm->to_matrix());
    }
    for (const auto& r : all_permutations(4)) {
      const auto sys = build_anchored_system(pair, r);
      const auto out = lp_solve(sys);
      if (out.compatible()) {
        CHECK(sys.block_values("x", out.witness) == r.to_matrix());
        CHECK(eq1_holds(pair, r));
      }
    }
  }
  CHECK_THROWS(build_anchored_system(swap_over_identity(), PermMatrix::identity(3)));
}

TEST_CASE("factored systems") {
  const RatMatrix i2 = RatMatrix::identity(2);
  const InstancePair ii{i2, i2, 2, Relation::Cover, "subgi"};
  const auto sys = build_factored_system(ii, {i2, i2, i2, i2});
  CHECK(sys.satisfied_by(perm_point(sys, PermMatrix::identity(2))));
  CHECK(feasible(sys));
  CHECK_THROWS(build_factored_system(ii, {i2, i2, 2 * i2, i2}));
  CHECK_THROWS(build_factored_system(ii, {RatMatrix::identity(3), i2, i2, i2}));

  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto pair = random_pair(seed, 3 + seed % 2);
    if (pair.S.sum() > pair.G.sum()) continue;
    const auto v = subgi_oracle(pair);
    if (v.yes) {
      const auto f = incidence_factors(pair, &v.witness);
      CHECK(feasible(build_factored_system(pair, f)));
    }
    // feasibility certifies YES
    if (feasible(build_factored_system(pair, incidence_factors(pair)))) CHECK(v.yes);
  }
}

TEST_CASE("symmetric LP examples") {
  Caps caps;
  const InstancePair sw{kSwap, kSwap, 2, Relation::Cover, "subgi"};
  auto lp = build_symmetric_lp(sw, SymmetricObjective::Count, caps);
  CHECK(lp.perms.size() == 2);
  CHECK(feasible(lp.sys));
  for (std::size_t i = 0; i < 2; ++i) {
    std::vector<Rational> point(2);
    point[i] = 1;
    CHECK(lp.sys.satisfied_by(point));
  }

  const InstancePair id{RatMatrix::identity(2), kSwap, 2, Relation::Cover, "subgi"};
  CHECK_FALSE(feasible(build_symmetric_lp(id, SymmetricObjective::Count, caps).sys));

  const InstancePair hc = build_hc_pair(DigraphInstance::from_adjacency(kCycle3));
  const RatMatrix w = RatMatrix::ones(3, 3);
  lp = build_symmetric_lp(hc, SymmetricObjective::Atsp, caps, &w);
  const auto out = lp_solve(lp.sys);
  REQUIRE(out.status == SolveStatus::Optimal);
  CHECK(*out.objective == 3);

  Caps small;
  small.symmetric_n = 2;
  CHECK_THROWS_AS(build_symmetric_lp(hc, SymmetricObjective::Count, small), CapExceeded);
}

TEST_CASE("symmetric 0/1 model matches the LP at small n") {
  Caps caps;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto pair = random_pair(seed, 2 + seed % 3);
    const bool lp = feasible(build_symmetric_lp(pair, SymmetricObjective::Count, caps).sys);
    const auto integer = symmetric_integer_decide(pair, caps);
    CHECK(integer.compatible == lp);
    CHECK(lp == testsupport::eq1_by_enumeration(pair));
  }
}

TEST_CASE("incidence exact system") {
  const auto g = incidence_decompose(kSwap);
  const IncidencePair s{RatMatrix::from_rows({{1}}), RatMatrix::from_rows({{1}}), {{0, 0, 0}}};
  const auto ex = build_incidence_exact(g, s);
  CHECK(ex.m == 1);
  CHECK(ex.l == 1);
  const PermMatrix x1({1, 0});
  const auto c = ex.check(x1, x1);
  CHECK(c.out_equation);
  CHECK_FALSE(c.in_equation);

  const auto cyc = incidence_decompose(kCycle3);
  CHECK(build_incidence_exact(cyc, cyc).check(PermMatrix::identity(3), PermMatrix::identity(3)).holds());
}

TEST_CASE("incidence symmetric system and the two-vertex example") {
  Caps caps;
  const auto g = incidence_decompose(kSwap);
  const IncidencePair s{RatMatrix::from_rows({{1}}), RatMatrix::from_rows({{1}}), {{0, 0, 0}}};
  // permutations are listed lexicographically: identity first, then the swap
  const auto raw = build_incidence_symmetric(g, s, caps, false);
  REQUIRE(raw.x_perms.size() == 2);
  CHECK(raw.x_perms[1] == PermMatrix({1, 0}));
  const std::size_t l11 = 1 * 2 + 1, l12 = 1 * 2 + 0;
  std::vector<Rational> unnormalized(4);
  unnormalized[l11] = 1;
  unnormalized[l12] = 1;
  CHECK(raw.sys.satisfied_by(unnormalized));

  const auto normed = build_incidence_symmetric(g, s, caps, true);
  std::vector<Rational> halves(4);
  halves[l11] = Rational(1, 2);
  halves[l12] = Rational(1, 2);
  CHECK_FALSE(normed.sys.satisfied_by(halves));

  Caps tiny;
  tiny.pair_count = 10;
  CHECK_THROWS_AS(build_incidence_symmetric(incidence_decompose(kCycle3), incidence_decompose(kCycle3), tiny), CapExceeded);
}

TEST_CASE("incidence symmetric point masses from witnesses") {
  Caps caps;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto pair = random_pair(seed, 3);
    const auto gi = incidence_decompose(pair.G), si = incidence_decompose(pair.S);
    if (si.arcs() > gi.arcs() || gi.arcs() > 4) continue;
    const auto v = subgi_oracle(pair);
    if (!v.yes) continue;
    const auto xz = incidence_witness_from_map(gi, si, v.witness);
    REQUIRE(xz);
    const auto model = build_incidence_symmetric(gi, si, caps);
    const auto xi = std::find(model.x_perms.begin(), model.x_perms.end(), xz->first) - model.x_perms.begin();
    const auto zi = std::find(model.z_perms.begin(), model.z_perms.end(), xz->second) - model.z_perms.begin();
    std::vector<Rational> point(model.sys.num_vars());
    point[xi * model.z_perms.size() + zi] = 1;
    CHECK(model.sys.satisfied_by(point));
  }
}

TEST_CASE("0/1 solutions of padded incidence systems are point masses") {
  Caps caps;
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto pair = random_pair(seed, 2 + seed % 2);
    const auto gi = incidence_decompose(pair.G), si = incidence_decompose(pair.S);
    if (si.arcs() == 0 || gi.arcs() > 3 || si.arcs() > gi.arcs()) continue;
    const auto model = build_incidence_symmetric(gi, si, caps, false);
    // Every term is nonnegative, so a partial sum above the right side can be cut.
    std::vector<RatMatrix> terms;
    for (const auto& x : model.x_perms)
      for (const auto& z : model.z_perms) terms.push_back(stacked_model_matrix(gi, si.arcs(), x, z));
    const RatMatrix target = vstack(si.out, si.in);
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t, RatMatrix)> dfs = [&](std::size_t i, RatMatrix sum) {
      if (sum == target) {
        CHECK(chosen.size() == 1);
        ++checked;
      }
      for (std::size_t j = i; j < terms.size(); ++j) {
        RatMatrix next = sum + terms[j];
        if (!target.geq(next)) continue;
        chosen.push_back(j);
        dfs(j + 1, next);
        chosen.pop_back();
      }
    };
    dfs(0, RatMatrix(target.rows(), target.cols()));
  }
  CHECK(checked > 0);
}

TEST_CASE("zero right-hand side presolve") {
  ConstraintSystem::Builder b;
  b.add_block("x", 1, 3);
  b.add_row({{0, 1}, {1, 1}}, Sense::Eq, 0);
  b.add_row({{1, 1}, {2, 1}}, Sense::Eq, 1);
  const auto pre = presolve_zero_rhs(b.build());
  const std::vector<std::size_t> both{0, 1};
  CHECK(pre.fixed == both);
  CHECK_FALSE(pre.decided_no);

  ConstraintSystem::Builder c;
  c.add_block("x", 1, 2);
  c.add_row({{0, 1}, {1, 1}}, Sense::Eq, 0);
  c.add_row({{0, 1}}, Sense::Eq, 1);
  CHECK(presolve_zero_rhs(c.build()).decided_no);

  Caps caps;
  std::size_t decided = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto pair = random_pair(seed, 3);
    const auto gi = incidence_decompose(pair.G), si = incidence_decompose(pair.S);
    if (gi.arcs() > 4 || si.arcs() > gi.arcs()) continue;
    const auto sys = build_incidence_symmetric(gi, si, caps).sys;
    const auto p = presolve_zero_rhs(sys);
    const bool before = feasible(sys);
    const bool after = !p.decided_no && feasible(p.sys);
    CHECK(before == after);
    if (p.decided_no || p.fixed.size() == sys.num_vars()) {
      ++decided;
      CHECK_FALSE(subgi_oracle(pair).yes);
    }
  }
  CHECK(decided > 0);
}

TEST_CASE("necessary system") {
  Caps caps;
  const auto one = incidence_decompose(RatMatrix::from_rows({{1}}));
  CHECK(feasible(build_necessary_system(one, one, caps)));

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto pair = random_pair(seed, 3);
    const auto gi = incidence_decompose(pair.G), si = incidence_decompose(pair.S);
    if (gi.arcs() > 5 || si.arcs() > gi.arcs()) continue;
    const bool nec = feasible(build_necessary_system(gi, si, caps));
    if (subgi_oracle(pair).yes) CHECK(nec);
    if (!nec && gi.arcs() <= 4) CHECK_FALSE(feasible(build_incidence_symmetric(gi, si, caps).sys));
  }
}

TEST_CASE("incidence convex check") {
  const auto two = incidence_decompose(kSwap);
  const auto cc = build_incidence_convex_check(two, two);
  CHECK(cc.target == 4);
  std::vector<Rational> point(cc.sys.num_vars());
  const auto& xb = cc.sys.block("x");
  const auto& zb = cc.sys.block("z");
  for (std::size_t i = 0; i < 2; ++i) {
    point[xb.index(i, i)] = 1;
    point[zb.index(i, i)] = 1;
  }
  CHECK(cc.sys.satisfied_by(point));
  CHECK(norm_max_decide(cc.sys).verdict == NormVerdict::Yes);

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto pair = random_pair(seed, 2 + seed % 2);
    const auto gi = incidence_decompose(pair.G), si = incidence_decompose(pair.S);
    if (si.arcs() > gi.arcs() || gi.arcs() > 6) continue;
    const auto d = norm_max_decide(build_incidence_convex_check(gi, si).sys);
    if (subgi_oracle(pair).yes) CHECK(d.verdict == NormVerdict::Yes);
  }
}

TEST_CASE("asymmetric model") {
  Caps caps;
  const auto two = incidence_decompose(kSwap);
  auto model = build_asymmetric_model(two, two, BasisGenerator::Exhaustive, caps);
  CHECK(model.center == Rational(1, 2) * RatMatrix::ones(4, 2));
  REQUIRE(model.center_matches_average);
  CHECK(*model.center_matches_average);
  CHECK(model.beta <= 2 * 2 * 2);
  CHECK(decide_asymmetric(model).compatible());

  CHECK(truncated_affine_rank(3, 0) == 1);
  CHECK(truncated_affine_rank(3, 2) == 2 * 2 + 1);
  CHECK(truncated_affine_rank(3, 3) == 5);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto pair = random_pair(seed, 2 + seed % 2);
    const auto gi = incidence_decompose(pair.G), si = incidence_decompose(pair.S);
    if (si.arcs() == 0 || si.arcs() > gi.arcs() || gi.arcs() > 3) continue;
    const std::size_t n = pair.n(), l = si.arcs();
    const auto greedy = build_asymmetric_model(gi, si, BasisGenerator::GreedyPoly, caps);
    const auto full = build_asymmetric_model(gi, si, BasisGenerator::Exhaustive, caps);
    // closed form (J/n) O_G (J/k) P^T
    const RatMatrix jn = Rational(1, n) * RatMatrix::ones(n, n);
    const RatMatrix jk = Rational(1, gi.arcs()) * RatMatrix::ones(gi.arcs(), gi.arcs());
    const RatMatrix tr = truncation(l, gi.arcs()).transpose();
    CHECK(greedy.center == vstack(jn * gi.out * jk * tr, jn * gi.in * jk * tr));
    CHECK(greedy.beta <= 2 * n * l);
    CHECK(full.beta <= 2 * n * l);
    CHECK(*full.center_matches_average);
    std::vector<std::vector<Rational>> vs;
    for (const auto& b : greedy.basis) vs.push_back(vectorize(b));
    CHECK(exact_rank(vs) == greedy.beta);
    if (subgi_oracle(pair).yes) {
      CHECK(decide_asymmetric(greedy).compatible());
      CHECK(decide_asymmetric(full).compatible());
    }
  }
}

TEST_CASE("clique depletion") {
  auto r = clique_depletion(kPath3, 3);
  CHECK(r.status == DepletionStatus::Emptied);
  CHECK(r.depleted.sum() == 0);
  CHECK(kPath3 * kPath3 == RatMatrix::from_rows({{1, 0, 1}, {0, 2, 0}, {1, 0, 1}}));

  r = clique_depletion(kK4, 3);
  CHECK(r.status == DepletionStatus::Survived);
  CHECK(r.removed.empty());
  CHECK(r.depleted == kK4);

  r = clique_depletion(kPath3, 2);
  CHECK(r.removed.empty());

  r = clique_depletion(RatMatrix(3, 3), 3);
  CHECK(r.status == DepletionStatus::Vacuous);
  CHECK_THROWS(clique_depletion(kPath3, 1));
}

TEST_CASE("max clique sweep") {
  auto s = max_clique_via_depletion(kK4, 4);
  CHECK(s.largest_surviving == 4);
  s = max_clique_via_depletion(kPath3, 3);
  REQUIRE(s.entries.size() == 2);
  CHECK(s.entries[0].status == DepletionStatus::Emptied);
  CHECK(s.entries[1].status == DepletionStatus::Survived);
  CHECK(s.largest_surviving == 2);
  CHECK(clique_oracle(DigraphInstance::from_adjacency(kPath3), 2).yes);
}

TEST_CASE("cut loop") {
  RatMatrix d(2, 2);
  d(0, 0) = 1;
  const InstancePair unique{d, d, 2, Relation::Cover, "subgi"};
  auto r = cut_loop(unique, 50);
  CHECK(r.verdict == CutVerdict::Yes);
  CHECK(r.steps.size() == 1);
  REQUIRE(r.witness);
  CHECK(*r.witness == PermMatrix::identity(2));

  r = cut_loop(swap_over_identity(), 50);
  CHECK(r.verdict == CutVerdict::No);
  // neither permutation satisfies the relaxation, so one cut already drops the maximum
  CHECK(r.cuts.size() == 1);
  REQUIRE(r.steps.size() == 2);
  REQUIRE(r.steps[0].extracted);
  CHECK(r.steps[1].max_sum < 2);

  r = cut_loop(swap_over_identity(), 1);
  CHECK(r.verdict == CutVerdict::Inconclusive);

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto pair = random_pair(seed, 3 + seed % 2);
    const auto c = cut_loop(pair, 50);
    const bool yes = subgi_oracle(pair).yes;
    if (c.verdict == CutVerdict::Yes) {
      CHECK(yes);
      CHECK(eq1_holds(pair, *c.witness));
    }
    if (c.verdict == CutVerdict::No) CHECK_FALSE(yes);
  }
}

TEST_CASE("caps parsing") {
  const Caps c = Caps::parse("symmetric_n=4,arc_count=7");
  CHECK(c.symmetric_n == 4);
  CHECK(c.arc_count == 7);
  CHECK(Caps::parse(c.to_string()).to_string() == c.to_string());
  CHECK_THROWS(Caps::parse("bogus=1"));
  CHECK_THROWS(Caps::parse("symmetric_n=x"));
}
