#include "bvlab/models.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "bvlab/incidence.hpp"
#include "bvlab/oracle.hpp"

namespace bvlab {

namespace {

void require_padded(const InstancePair& pair, const char* who) {
  pair.validate();
  if (!pair.padded()) throw std::invalid_argument(std::string(who) + ": pair must be padded (m == n)");
}

ConstraintSystem::Builder relaxation_builder(const InstancePair& pair, Side side) {
  const std::size_t n = pair.n();
  const RatMatrix& g = pair.G;
  const RatMatrix& s = pair.S;
  const Sense sense = pair.relation == Relation::Equal ? Sense::Eq : Sense::Ge;
  ConstraintSystem::Builder b;
  b.add_block("x", n, n, true, Stochastic::Sub);
  const VarBlock x = b.block("x");
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t p = 0; p < n; ++p) {
      std::vector<Term> terms;
      for (std::size_t t = 0; t < n; ++t) {
        if (side == Side::Left) {
          // (GX)(h,p) - (XS)(h,p)
          if (g(h, t) != 0) terms.push_back({x.index(t, p), g(h, t)});
          if (s(t, p) != 0) terms.push_back({x.index(h, t), -s(t, p)});
        } else {
          // (X^T G)(p,h) - (S X^T)(p,h)
          if (g(t, h) != 0) terms.push_back({x.index(t, p), g(t, h)});
          if (s(p, t) != 0) terms.push_back({x.index(h, t), -s(p, t)});
        }
      }
      b.add_row(std::move(terms), sense, 0, side == Side::Left ? "left" : "right");
    }
  }
  b.add_stochastic_rows("x");
  return b;
}

}  // namespace

Caps Caps::parse(const std::string& text, Caps base) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("caps: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument("caps: bad number '" + value + "'");
    if (key == "symmetric_n") {
      base.symmetric_n = v;
    } else if (key == "pair_count") {
      base.pair_count = v;
    } else if (key == "exact_single_n") {
      base.exact_single_n = v;
    } else if (key == "search_nodes") {
      base.search_nodes = v;
    } else if (key == "anchored_n") {
      base.anchored_n = v;
    } else if (key == "relaxation_n") {
      base.relaxation_n = v;
    } else if (key == "arc_count") {
      base.arc_count = v;
    } else {
      throw std::invalid_argument("caps: unknown key '" + key + "'");
    }
  }
  return base;
}

Caps Caps::from_env(Caps base) {
  const char* env = std::getenv("BVLAB_CAPS");
  return env == nullptr ? base : parse(env, base);
}

Caps Caps::parse(const std::string& text) { return parse(text, Caps{}); }

Caps Caps::from_env() { return from_env(Caps{}); }

std::string Caps::to_string() const {
  std::ostringstream os;
  os << "symmetric_n=" << symmetric_n << ",pair_count=" << pair_count << ",exact_single_n=" << exact_single_n
     << ",search_nodes=" << search_nodes << ",anchored_n=" << anchored_n << ",relaxation_n=" << relaxation_n
     << ",arc_count=" << arc_count;
  return os.str();
}

ConstraintSystem build_relaxation(const InstancePair& pair, Side side) {
  require_padded(pair, "build_relaxation");
  return relaxation_builder(pair, side).build();
}

ConvexCheck build_convex_check(const InstancePair& pair) {
  require_padded(pair, "build_convex_check");
  return {relaxation_builder(pair, Side::Left).build(), Rational(pair.n())};
}

ConstraintSystem build_anchored_system(const InstancePair& pair, const PermMatrix& r) {
  require_padded(pair, "build_anchored_system");
  if (r.size() != pair.n()) throw std::invalid_argument("build_anchored_system: R has the wrong size");
  auto b = relaxation_builder(pair, Side::Left);
  const VarBlock x = b.block("x");
  for (std::size_t i = 0; i < r.size(); ++i) b.add_row({{x.index(i, r[i]), 1}}, Sense::Ge, 1, "anchor");
  return b.build();
}

ConstraintSystem build_factored_system(const InstancePair& pair, const Factors& f) {
  require_padded(pair, "build_factored_system");
  const std::size_t n = pair.n();
  const std::size_t p = f.g1.cols();
  if (f.g1.rows() != n || f.g2.rows() != p || f.g2.cols() != n || f.s1.rows() != n || f.s1.cols() != p ||
      f.s2.rows() != p || f.s2.cols() != n) {
    throw std::invalid_argument("build_factored_system: factor shapes do not fit");
  }
  if (!f.g1.is_nonnegative() || !f.g2.is_nonnegative() || !f.s1.is_nonnegative() || !f.s2.is_nonnegative()) {
    throw std::invalid_argument("build_factored_system: factors must be nonnegative");
  }
  if (!pair.G.geq(f.g1 * f.g2) || !pair.S.geq(f.s1 * f.s2)) {
    throw std::invalid_argument("build_factored_system: G >= G1 G2 or S >= S1 S2 violated");
  }
  ConstraintSystem::Builder b;
  b.add_block("x", n, n, true, Stochastic::Doubly);
  const VarBlock x = b.block("x");
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t c = 0; c < p; ++c) {
      std::vector<Term> terms;
      for (std::size_t q = 0; q < n; ++q)
        if (f.s1(q, c) != 0) terms.push_back({x.index(h, q), f.s1(q, c)});
      b.add_row(std::move(terms), Sense::Le, f.g1(h, c), "G1>=XS1");
    }
  }
  for (std::size_t c = 0; c < p; ++c) {
    for (std::size_t h = 0; h < n; ++h) {
      std::vector<Term> terms;
      for (std::size_t q = 0; q < n; ++q)
        if (f.s2(c, q) != 0) terms.push_back({x.index(h, q), f.s2(c, q)});
      b.add_row(std::move(terms), Sense::Le, f.g2(c, h), "G2>=S2X^T");
    }
  }
  b.add_stochastic_rows("x");
  return b.build();
}

Factors incidence_factors(const InstancePair& pair, const std::vector<std::size_t>* map) {
  require_padded(pair, "incidence_factors");
  const IncidencePair gi = incidence_decompose(pair.G);
  const IncidencePair si = incidence_decompose(pair.S);
  const std::size_t n = pair.n();
  const std::size_t k = gi.arcs();
  if (si.arcs() > k) throw std::invalid_argument("incidence_factors: pattern has more arcs than instance");
  RatMatrix z = RatMatrix::identity(k);
  if (map != nullptr) {
    const auto w = incidence_witness_from_map(gi, si, *map);
    if (!w) throw std::invalid_argument("incidence_factors: map does not carry pattern arcs onto host arcs");
    z = w->second.to_matrix();
  }
  Factors f;
  f.g1 = gi.out * z;
  f.g2 = (gi.in * z).transpose();
  f.s1 = si.out.padded(n, k);
  f.s2 = si.in.padded(n, k).transpose();
  return f;
}

SymmetricLp build_symmetric_lp(const InstancePair& pair, SymmetricObjective objective, const Caps& caps,
                               const RatMatrix* weights) {
  require_padded(pair, "build_symmetric_lp");
  const std::size_t n = pair.n();
  if (n > caps.symmetric_n) throw CapExceeded("symmetric model: n exceeds symmetric_n cap");
  if (objective == SymmetricObjective::Atsp && (weights == nullptr || weights->rows() != n || weights->cols() != n)) {
    throw std::invalid_argument("build_symmetric_lp: ATSP needs an n x n weight matrix");
  }
  SymmetricLp out;
  out.perms = all_permutations(n);
  const std::size_t count = out.perms.size();
  ConstraintSystem::Builder b;
  b.add_block("lambda", count, 1);
  const Sense sense = pair.relation == Relation::Equal ? Sense::Eq : Sense::Le;
  // (X S X^T)(h, h2) = S(X[h], X[h2]) for x[h][X[h]] = 1.
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t h2 = 0; h2 < n; ++h2) {
      std::vector<Term> terms;
      for (std::size_t i = 0; i < count; ++i) {
        const Rational& v = pair.S(out.perms[i][h], out.perms[i][h2]);
        if (v != 0) terms.push_back({i, v});
      }
      b.add_row(std::move(terms), sense, pair.G(h, h2), "XSX^T<=G");
    }
  }
  std::vector<Term> all;
  for (std::size_t i = 0; i < count; ++i) all.push_back({i, 1});
  b.add_row(all, Sense::Eq, 1, "simplex");
  Objective obj{false, {}};
  if (objective == SymmetricObjective::Count) {
    obj.terms = all;
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      Rational c = 0;
      for (std::size_t h = 0; h < n; ++h)
        for (std::size_t h2 = 0; h2 < n; ++h2) c += (*weights)(h, h2) * pair.S(out.perms[i][h], out.perms[i][h2]);
      obj.terms.push_back({i, c});
    }
  }
  b.set_objective(std::move(obj));
  out.sys = b.build();
  return out;
}

namespace {

struct SubsetSearch {
  const std::vector<std::vector<long>>* g;
  std::vector<std::vector<long>> images;  // X_i S X_i^T flattened
  std::vector<long> sum;
  bool equal;
  std::uint64_t cap;
  SymmetricIntegerResult result;

  bool dfs(std::size_t start) {
    for (std::size_t i = start; i < images.size(); ++i) {
      if (++result.nodes > cap) throw CapExceeded("symmetric 0/1 search: node cap reached");
      bool fits = true;
      for (std::size_t e = 0; e < sum.size() && fits; ++e) fits = sum[e] + images[i][e] <= (*g)[0][e];
      if (!fits) continue;
      for (std::size_t e = 0; e < sum.size(); ++e) sum[e] += images[i][e];
      result.chosen.push_back(i);
      if (!equal || sum == (*g)[0]) return true;
      if (dfs(i + 1)) return true;
      result.chosen.pop_back();
      for (std::size_t e = 0; e < sum.size(); ++e) sum[e] -= images[i][e];
    }
    return false;
  }
};

}  // namespace

SymmetricIntegerResult symmetric_integer_decide(const InstancePair& pair, const Caps& caps) {
  require_padded(pair, "symmetric_integer_decide");
  const std::size_t n = pair.n();
  if (n > caps.symmetric_n) throw CapExceeded("symmetric model: n exceeds symmetric_n cap");
  const auto perms = all_permutations(n);
  std::vector<std::vector<long>> g(1);
  for (const auto& q : pair.G.entries()) g[0].push_back(q.get_num().get_si());
  SubsetSearch search;
  search.g = &g;
  search.equal = pair.relation == Relation::Equal;
  search.cap = caps.search_nodes;
  search.sum.assign(n * n, 0);
  for (const auto& x : perms) {
    std::vector<long> img(n * n);
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t h2 = 0; h2 < n; ++h2) img[h * n + h2] = pair.S(x[h], x[h2]).get_num().get_si();
    search.images.push_back(std::move(img));
  }
  if (pair.S.sum() == 0) {
    // Every image is zero: sums never grow, so only a single term can matter.
    search.result.compatible = !search.equal || pair.G.sum() == 0;
    if (search.result.compatible) search.result.chosen = {0};
    search.result.nodes = 1;
    return search.result;
  }
  search.result.compatible = search.dfs(0);
  if (!search.result.compatible) search.result.chosen.clear();
  return search.result;
}

}  // namespace bvlab
