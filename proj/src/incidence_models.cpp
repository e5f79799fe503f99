#include "bvlab/incidence_models.hpp"

#include <algorithm>
#include <stdexcept>

#include "bvlab/echelon.hpp"

namespace bvlab {

namespace {

void check_sizes(const IncidencePair& g, const IncidencePair& s) {
  if (s.vertices() > g.vertices()) throw std::invalid_argument("incidence model: pattern has more vertices");
  if (s.arcs() > g.arcs()) throw std::invalid_argument("incidence model: pattern has more arcs than instance");
}

void check_padded(const IncidencePair& g, const IncidencePair& s) {
  check_sizes(g, s);
  if (s.vertices() != g.vertices()) throw std::invalid_argument("incidence model: pattern must be padded");
}

// Host arc placed in column c by Z: the row holding column c's single 1.
std::vector<std::size_t> column_sources(const PermMatrix& z) { return z.inverse().image(); }

}  // namespace

IncidenceExactSystem build_incidence_exact(const IncidencePair& g, const IncidencePair& s) {
  check_sizes(g, s);
  return {g, s, s.vertices(), s.arcs()};
}

IncidenceSymmetric build_incidence_symmetric(const IncidencePair& g, const IncidencePair& s, const Caps& caps,
                                             bool with_sum) {
  check_sizes(g, s);
  const std::size_t n = g.vertices();
  const std::size_t k = g.arcs();
  const std::size_t m = s.vertices();
  const std::size_t l = s.arcs();
  const std::uint64_t nf = factorial_capped(n, caps.pair_count);
  const std::uint64_t kf = factorial_capped(k, caps.pair_count);
  if (nf * kf > caps.pair_count) throw CapExceeded("incidence symmetric model: n! k! exceeds pair_count cap");

  IncidenceSymmetric out;
  out.x_perms = all_permutations(n);
  out.z_perms = all_permutations(k);
  std::vector<std::vector<std::size_t>> zsrc;
  for (const auto& z : out.z_perms) zsrc.push_back(column_sources(z));

  ConstraintSystem::Builder b;
  b.add_block("lambda", nf * kf, 1);
  for (int side = 0; side < 2; ++side) {
    const RatMatrix& host = side == 0 ? g.out : g.in;
    const RatMatrix& pat = side == 0 ? s.out : s.in;
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t c = 0; c < l; ++c) {
        std::vector<Term> terms;
        for (std::size_t i = 0; i < nf; ++i) {
          const std::size_t hv = out.x_perms[i][p];
          for (std::size_t j = 0; j < kf; ++j) {
            if (host(hv, zsrc[j][c]) != 0) terms.push_back({i * kf + j, host(hv, zsrc[j][c])});
          }
        }
        b.add_row(std::move(terms), Sense::Eq, pat(p, c), side == 0 ? "out" : "in");
      }
    }
  }
  if (with_sum) {
    std::vector<Term> all;
    for (std::size_t v = 0; v < nf * kf; ++v) all.push_back({v, 1});
    b.add_row(std::move(all), Sense::Eq, 1, "simplex");
  }
  out.sys = b.build();
  return out;
}

PresolveResult presolve_zero_rhs(const ConstraintSystem& sys) {
  for (const auto& blk : sys.blocks()) {
    if (!blk.nonneg) throw std::invalid_argument("presolve_zero_rhs: all variables must be nonnegative");
  }
  PresolveResult out;
  std::vector<bool> fixed(sys.num_vars(), false);
  for (bool changed = true; changed;) {
    changed = false;
    ++out.rounds;
    for (const auto& row : sys.rows()) {
      if (row.sense != Sense::Eq || row.rhs != 0) continue;
      bool pos = false, neg = false, any = false;
      for (const auto& t : row.terms) {
        if (fixed[t.var]) continue;
        any = true;
        (t.coeff > 0 ? pos : neg) = true;
      }
      if (!any || (pos && neg)) continue;
      for (const auto& t : row.terms) {
        if (!fixed[t.var]) {
          fixed[t.var] = true;
          changed = true;
        }
      }
    }
  }
  ConstraintSystem::Builder b;
  for (const auto& blk : sys.blocks()) b.add_block(blk.name, blk.rows, blk.cols, blk.nonneg, blk.stochastic);
  for (const auto& row : sys.rows()) {
    std::vector<Term> terms;
    for (const auto& t : row.terms)
      if (!fixed[t.var]) terms.push_back(t);
    if (terms.empty() && !LinearRow{{}, row.sense, row.rhs, {}}.satisfied_by({})) out.decided_no = true;
    b.add_row(std::move(terms), row.sense, row.rhs, row.tag);
  }
  if (sys.objective()) {
    Objective obj{sys.objective()->maximize, {}};
    for (const auto& t : sys.objective()->terms)
      if (!fixed[t.var]) obj.terms.push_back(t);
    b.set_objective(std::move(obj));
  }
  out.sys = b.build();
  for (std::size_t v = 0; v < fixed.size(); ++v)
    if (fixed[v]) out.fixed.push_back(v);
  return out;
}

ConstraintSystem build_necessary_system(const IncidencePair& g, const IncidencePair& s, const Caps& caps) {
  check_padded(g, s);
  const std::size_t n = g.vertices();
  const std::size_t k = g.arcs();
  const std::size_t l = s.arcs();
  const std::uint64_t nf = factorial_capped(n, caps.pair_count);
  const std::uint64_t kf = factorial_capped(k, caps.pair_count);
  if (nf + kf > caps.pair_count) throw CapExceeded("necessary system: n! + k! exceeds pair_count cap");
  const auto xs = all_permutations(n);
  const auto zs = all_permutations(k);
  std::vector<std::vector<std::size_t>> zsrc;
  for (const auto& z : zs) zsrc.push_back(column_sources(z));

  ConstraintSystem::Builder b;
  b.add_block("lambda", kf, 1);
  b.add_block("mu", nf, 1);
  const VarBlock lam = b.block("lambda");
  const VarBlock mu = b.block("mu");
  for (int side = 0; side < 2; ++side) {
    const RatMatrix& host = side == 0 ? g.out : g.in;
    const RatMatrix& pat = side == 0 ? s.out : s.in;
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t c = 0; c < l; ++c) {
        std::vector<Term> terms;
        for (std::size_t j = 0; j < kf; ++j)
          if (host(v, zsrc[j][c]) != 0) terms.push_back({lam.index(j, 0), host(v, zsrc[j][c])});
        // (X_i O_S)(v, c) = O_S(X_i[v], c)
        for (std::size_t i = 0; i < nf; ++i)
          if (pat(xs[i][v], c) != 0) terms.push_back({mu.index(i, 0), -pat(xs[i][v], c)});
        b.add_row(std::move(terms), Sense::Eq, 0, side == 0 ? "out" : "in");
      }
    }
  }
  std::vector<Term> lsum, msum;
  for (std::size_t j = 0; j < kf; ++j) lsum.push_back({lam.index(j, 0), 1});
  for (std::size_t i = 0; i < nf; ++i) msum.push_back({mu.index(i, 0), 1});
  b.add_row(std::move(lsum), Sense::Eq, 1, "simplex:lambda");
  b.add_row(std::move(msum), Sense::Eq, 1, "simplex:mu");
  return b.build();
}

IncidenceConvexCheck build_incidence_convex_check(const IncidencePair& g, const IncidencePair& s) {
  check_padded(g, s);
  const std::size_t n = g.vertices();
  const std::size_t k = g.arcs();
  const std::size_t l = s.arcs();
  ConstraintSystem::Builder b;
  b.add_block("x", n, n, true, Stochastic::Doubly);
  b.add_block("z", k, k, true, Stochastic::Doubly);
  const VarBlock x = b.block("x");
  const VarBlock z = b.block("z");
  for (int side = 0; side < 2; ++side) {
    const RatMatrix& host = side == 0 ? g.out : g.in;
    const RatMatrix& pat = side == 0 ? s.out : s.in;
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t c = 0; c < l; ++c) {
        std::vector<Term> terms;
        for (std::size_t a = 0; a < k; ++a)
          if (host(v, a) != 0) terms.push_back({z.index(a, c), host(v, a)});
        for (std::size_t p = 0; p < n; ++p)
          if (pat(p, c) != 0) terms.push_back({x.index(p, v), -pat(p, c)});
        b.add_row(std::move(terms), Sense::Eq, 0, side == 0 ? "out" : "in");
      }
    }
  }
  b.add_stochastic_rows("x");
  b.add_stochastic_rows("z");
  return {b.build(), Rational(n + k)};
}

std::string to_string(BasisGenerator g) { return g == BasisGenerator::GreedyPoly ? "GREEDY-POLY" : "EXHAUSTIVE"; }

RatMatrix stacked_model_matrix(const IncidencePair& g, std::size_t l, const PermMatrix& x, const PermMatrix& z) {
  const std::size_t n = g.vertices();
  const auto src = column_sources(z);
  RatMatrix out(2 * n, l);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t c = 0; c < l; ++c) {
      out(p, c) = g.out(x[p], src[c]);
      out(n + p, c) = g.in(x[p], src[c]);
    }
  }
  return out;
}

std::size_t truncated_affine_rank(std::size_t k, std::size_t l) {
  if (l == 0 || k == 0) return 1;
  if (l < k) return l * (k - 1) + 1;
  return (k - 1) * (k - 1) + 1;
}

namespace {

std::vector<PermMatrix> small_cycle_candidates(std::size_t n) {
  std::vector<PermMatrix> out{PermMatrix::identity(n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<std::size_t> img(n);
      for (std::size_t t = 0; t < n; ++t) img[t] = t;
      std::swap(img[i], img[j]);
      out.emplace_back(img);
      for (std::size_t h = j + 1; h < n; ++h) {
        for (int orient = 0; orient < 2; ++orient) {
          for (std::size_t t = 0; t < n; ++t) img[t] = t;
          if (orient == 0) {
            img[i] = j, img[j] = h, img[h] = i;
          } else {
            img[i] = h, img[h] = j, img[j] = i;
          }
          out.emplace_back(img);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rational> truncated_vector(const PermMatrix& z, std::size_t l) {
  std::vector<Rational> v(z.size() * l, 0);
  for (std::size_t a = 0; a < z.size(); ++a)
    if (z[a] < l) v[a * l + z[a]] = 1;
  return v;
}

std::vector<PermMatrix> select_side(std::size_t size, std::size_t l, bool truncated, BasisGenerator gen,
                                    const Caps& caps) {
  const std::size_t full_rank = truncated ? truncated_affine_rank(size, l) : truncated_affine_rank(size, size);
  auto pick = [&](const std::vector<PermMatrix>& family) {
    std::vector<std::vector<Rational>> vecs;
    for (const auto& p : family) vecs.push_back(truncated ? truncated_vector(p, l) : vectorize(p.to_matrix()));
    std::vector<PermMatrix> kept;
    for (std::size_t idx : greedy_affine_select(vecs)) kept.push_back(family[idx]);
    return kept;
  };
  if (gen == BasisGenerator::GreedyPoly) {
    auto kept = pick(small_cycle_candidates(size));
    if (kept.size() == full_rank) return kept;
  }
  factorial_capped(size, caps.pair_count);
  return pick(all_permutations(size));
}

}  // namespace

AsymmetricModel build_asymmetric_model(const IncidencePair& g, const IncidencePair& s, BasisGenerator gen,
                                       const Caps& caps) {
  check_padded(g, s);
  const std::size_t n = g.vertices();
  const std::size_t k = g.arcs();
  const std::size_t l = s.arcs();
  if (k == 0) throw std::invalid_argument("asymmetric model: instance has no arcs");
  if (gen == BasisGenerator::Exhaustive) {
    const std::uint64_t nf = factorial_capped(n, caps.pair_count);
    const std::uint64_t kf = factorial_capped(k, caps.pair_count);
    if (nf * kf > caps.pair_count) throw CapExceeded("asymmetric model: n! k! exceeds pair_count cap");
  }

  AsymmetricModel model;
  model.center = Rational(1, n) * RatMatrix::ones(2 * n, l);
  {
    // The averages of all permutation matrices are J/n and J/k.
    const RatMatrix xbar = Rational(1, n) * RatMatrix::ones(n, n);
    const RatMatrix zbar = Rational(1, k) * RatMatrix::ones(k, k);
    const RatMatrix p = truncation(l, k);
    const RatMatrix closed = vstack(xbar * g.out * zbar * p.transpose(), xbar * g.in * zbar * p.transpose());
    if (!(closed == model.center)) throw std::logic_error("asymmetric model: center differs from J/n");
  }
  model.rhs = vstack(s.out, s.in) - model.center;

  if (gen == BasisGenerator::Exhaustive) {
    model.x_family = all_permutations(n);
    model.z_family = all_permutations(k);
    RatMatrix total(2 * n, l);
    for (const auto& x : model.x_family)
      for (const auto& z : model.z_family) total += stacked_model_matrix(g, l, x, z);
    const Rational count(static_cast<unsigned long>(model.x_family.size() * model.z_family.size()));
    model.center_matches_average = (Rational(1) / count) * total == model.center;
  } else {
    model.x_family = select_side(n, l, false, gen, caps);
    model.z_family = select_side(k, l, true, gen, caps);
  }

  const std::size_t dim = 2 * n * l;
  EchelonBasis basis(dim);
  for (std::size_t i = 0; i < model.x_family.size() && basis.rank() < dim; ++i) {
    for (std::size_t j = 0; j < model.z_family.size() && basis.rank() < dim; ++j) {
      RatMatrix b = stacked_model_matrix(g, l, model.x_family[i], model.z_family[j]) - model.center;
      if (basis.insert(vectorize(b))) {
        model.basis.push_back(std::move(b));
        model.generators.push_back({i, j});
      }
    }
  }
  model.beta = model.basis.size();
  if (model.beta > 2 * n * l) throw std::logic_error("asymmetric model: basis larger than 2nl");
  return model;
}

SolveOutcome decide_asymmetric(const AsymmetricModel& model) {
  const std::vector<Rational> rhs = vectorize(model.rhs);
  RatMatrix a(rhs.size(), model.beta);
  for (std::size_t c = 0; c < model.beta; ++c) {
    const auto v = vectorize(model.basis[c]);
    for (std::size_t r = 0; r < v.size(); ++r) a(r, c) = v[r];
  }
  return linsys_solve(a, rhs);
}

}  // namespace bvlab
