#pragma once

// Test-side references. Deliberately naive: plain enumeration with no pruning and no
// library helpers beyond RatMatrix storage, so they can check the library's searches.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "bvlab/matrix.hpp"
#include "bvlab/problems.hpp"
#include "bvlab/reductions.hpp"

namespace testsupport {

using bvlab::Rational;
using bvlab::RatMatrix;

inline RatMatrix half_ones(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Rational(1, n);
  return m;
}

/// Pattern vertex i goes to host vertex p[i] for i < m; every injective map is some
/// prefix of a permutation, so walking all n! permutations covers them.
inline bool eq1_by_enumeration(const bvlab::InstancePair& pair) {
  const std::size_t n = pair.G.rows(), m = pair.S.rows();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i)
      for (std::size_t j = 0; j < m && ok; ++j) {
        const Rational& g = pair.G(p[i], p[j]);
        const Rational& s = pair.S(i, j);
        ok = pair.relation == bvlab::Relation::Equal ? g == s : g >= s;
      }
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

inline bool sat_by_enumeration(const bvlab::CnfFormula& f) {
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << f.num_vars); ++bits) {
    bool all = true;
    for (const auto& c : f.clauses) {
      bool any = false;
      for (int lit : c) {
        const bool v = (bits >> (std::abs(lit) - 1)) & 1;
        any = any || (lit > 0 ? v : !v);
      }
      all = all && any;
    }
    if (all) return true;
  }
  return false;
}

/// Undirected view: both arcs must be present.
inline bool clique_by_enumeration(const RatMatrix& g, std::size_t m) {
  const std::size_t n = g.rows();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != m) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j)
        if (i != j && (mask >> i & 1) && (mask >> j & 1)) ok = g(i, j) != 0 && g(j, i) != 0;
    if (ok) return true;
  }
  return false;
}

inline bool hamiltonian_by_enumeration(const RatMatrix& g, bool cycle) {
  const std::size_t n = g.rows();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < n && ok; ++i) ok = g(p[i], p[i + 1]) != 0;
    if (ok && cycle) ok = g(p[n - 1], p[0]) != 0;
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

/// m/2 disjoint arcs between distinct vertices, any direction recorded in g.
inline bool matching_by_enumeration(const RatMatrix& g, std::size_t m, std::vector<bool> used = {}, std::size_t from = 0) {
  const std::size_t n = g.rows();
  if (used.empty()) used.assign(n, false);
  if (m == 0) return true;
  for (std::size_t i = from; i < n; ++i) {
    if (used[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || used[j] || g(i, j) == 0) continue;
      used[i] = used[j] = true;
      if (matching_by_enumeration(g, m - 2, used, 0)) return true;
      used[i] = used[j] = false;
    }
  }
  return false;
}

/// Random doubly stochastic matrix: a convex combination of a few random permutations
/// with random positive rational weights.
inline RatMatrix random_doubly_stochastic(std::size_t n, std::mt19937_64& rng) {
  const std::size_t terms = 1 + rng() % 4;
  std::vector<std::uint64_t> w(terms);
  std::uint64_t total = 0;
  for (auto& x : w) total += (x = 1 + rng() % 7);
  RatMatrix m(n, n);
  for (std::size_t t = 0; t < terms; ++t) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    for (std::size_t i = 0; i < n; ++i) m(i, p[i]) += bvlab::ratio(static_cast<long>(w[t]), static_cast<long>(total));
  }
  return m;
}

}  // namespace testsupport
