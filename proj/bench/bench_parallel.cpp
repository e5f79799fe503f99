// Serial vs OpenMP timings for the two parallel kernels: the permutation-point search
// behind the norm decisions and the subgraph-isomorphism oracle.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>

#include "bvlab/models.hpp"
#include "bvlab/oracle.hpp"
#include "bvlab/perm_search.hpp"
#include "bvlab/problems.hpp"
#include "bvlab/reductions.hpp"

using namespace bvlab;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const std::string& what, double serial, double parallel, bool same) {
  std::printf("%-40s serial %8.4fs  omp %8.4fs  speedup %5.2f  %s\n", what.c_str(), serial, parallel,
              parallel > 0 ? serial / parallel : 0.0, same ? "same result" : "RESULTS DIFFER");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());

  // Dense host, HC pattern: the relaxation is feasible at many permutation points.
  for (std::size_t n : {6, 7, 8}) {
    const DigraphInstance g = gen_random_digraph(n, Rational(1, 2), 1000 + n);
    const InstancePair pair = build_hc_pair(g);
    const ConstraintSystem sys = build_relaxation(pair, Side::Left);
    PermSearchOptions ser, par;
    ser.parallel = false;
    par.parallel = true;
    PermSearchResult a, b;
    const double ts = seconds([&] { a = permutation_point_search(sys, ser); });
    const double tp = seconds([&] { b = permutation_point_search(sys, par); });
    row("perm search hc n=" + std::to_string(n), ts, tp, a.status == b.status && a.witness == b.witness);
  }

  // Clique pattern that does not embed, so the whole tree is walked.
  for (std::size_t n : {8, 9, 10}) {
    const DigraphInstance g = gen_random_digraph(n, Rational(1, 2), 2000 + n, {false, true});
    const InstancePair pair = build_clique_pair(g, n / 2 + 1);
    OracleVerdict a, b;
    const double ts = seconds([&] { a = subgi_oracle(pair, {false}); });
    const double tp = seconds([&] { b = subgi_oracle(pair, {true}); });
    row("subgi oracle clique n=" + std::to_string(n), ts, tp, a.yes == b.yes && a.witness == b.witness);
  }
  return 0;
}
