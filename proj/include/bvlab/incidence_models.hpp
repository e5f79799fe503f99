#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bvlab/constraint_system.hpp"
#include "bvlab/incidence.hpp"
#include "bvlab/models.hpp"
#include "bvlab/oracle.hpp"
#include "bvlab/solve.hpp"

namespace bvlab {

/// The bilinear pair P_mn X O_G Z P_lk^T = O_S, P_mn X I_G Z P_lk^T = I_S. Not linear,
/// so it is only ever evaluated at given permutations.
struct IncidenceExactSystem {
  IncidencePair g;
  IncidencePair s;
  std::size_t m = 0;
  std::size_t l = 0;

  IncidenceCheck check(const PermMatrix& x, const PermMatrix& z) const { return incidence_witness_check(g, s, x, z); }
};

IncidenceExactSystem build_incidence_exact(const IncidencePair& g, const IncidencePair& s);

struct IncidenceSymmetric {
  ConstraintSystem sys;  ///< block "lambda", entry i * k! + j pairs X_i with Z_j
  std::vector<PermMatrix> x_perms;
  std::vector<PermMatrix> z_perms;
};

/// sum_ij lambda_ij P X_i O_G Z_j P^T = O_S (and the I rows), lambda >= 0, plus
/// sum lambda = 1 when with_sum. Without the sum row the 0/1 relaxation of the integer
/// model is obtained. Throws CapExceeded when n! * k! > caps.pair_count.
IncidenceSymmetric build_incidence_symmetric(const IncidencePair& g, const IncidencePair& s, const Caps& caps,
                                             bool with_sum = true);

struct PresolveResult {
  ConstraintSystem sys;
  std::vector<std::size_t> fixed;  ///< variables forced to 0, ascending
  bool decided_no = false;         ///< an emptied row became 0 = c with c != 0
  std::size_t rounds = 0;
};

/// An equality with zero rhs whose coefficients share one sign forces its support to 0.
/// Those variables are dropped from every row and the rule is reapplied to a fixpoint.
/// Requires all variables nonnegative.
PresolveResult presolve_zero_rhs(const ConstraintSystem& sys);

/// lambda over the k! arc permutations and mu over the n! vertex permutations:
/// sum_j lambda_j O_G Z_j P^T = sum_i mu_i X_i O_S (likewise for I), both simplices.
ConstraintSystem build_necessary_system(const IncidencePair& g, const IncidencePair& s, const Caps& caps);

struct IncidenceConvexCheck {
  ConstraintSystem sys;  ///< doubly stochastic blocks "x" (n x n) and "z" (k x k)
  Rational target;       ///< n + k
};

/// O_G Z P^T = X^T O_S, I_G Z P^T = X^T I_S with both Birkhoff constraint sets.
/// Requires a padded pattern (m == n) and l <= k.
IncidenceConvexCheck build_incidence_convex_check(const IncidencePair& g, const IncidencePair& s);

enum class BasisGenerator { GreedyPoly, Exhaustive };

std::string to_string(BasisGenerator g);

struct AsymmetricModel {
  RatMatrix center;             ///< 2n x l, all entries 1/n
  std::vector<RatMatrix> basis; ///< B_i, each a stacked model matrix minus the center
  std::vector<std::pair<std::size_t, std::size_t>> generators;  ///< (x index, z index) per B_i
  std::vector<PermMatrix> x_family;
  std::vector<PermMatrix> z_family;
  std::size_t beta = 0;
  RatMatrix rhs;                ///< (O_S; I_S) - C
  /// EXHAUSTIVE only: whether the true average over all pairs matched the center.
  std::optional<bool> center_matches_average;
};

/// GREEDY-POLY: identity, transpositions and 3-cycles (lex order) on each side, kept by
/// affine-rank gain; if a side falls short of its full affine rank, that side is redone
/// over all permutations. EXHAUSTIVE: every permutation on both sides.
/// The basis is then chosen greedily from the product family.
AsymmetricModel build_asymmetric_model(const IncidencePair& g, const IncidencePair& s, BasisGenerator gen,
                                       const Caps& caps);

/// Solves sum y_i B_i = rhs.
SolveOutcome decide_asymmetric(const AsymmetricModel& model);

/// Stacked (X O_G Z P^T ; X I_G Z P^T), 2n x l.
RatMatrix stacked_model_matrix(const IncidencePair& g, std::size_t l, const PermMatrix& x, const PermMatrix& z);

/// Full affine rank of {Z P_lk^T : Z a k x k permutation}.
std::size_t truncated_affine_rank(std::size_t k, std::size_t l);

}  // namespace bvlab
