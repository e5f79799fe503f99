#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bvlab/constraint_system.hpp"
#include "bvlab/perm_search.hpp"

namespace bvlab {

enum class NormVerdict { Yes, No, IterationLimit };

std::string to_string(NormVerdict v);

struct NormOptions {
  PermSearchOptions search;
  /// Iterated linear maximization; off skips every LP.
  bool heuristic = true;
  std::size_t heuristic_rounds = 12;
};

struct NormDecision {
  NormVerdict verdict = NormVerdict::No;
  /// Sum of the stochastic block sizes.
  Rational target;
  /// Squared norm after each heuristic round (nondecreasing).
  std::vector<Rational> heuristic_history;
  /// Largest squared norm certified: the target on Yes, otherwise the heuristic bound.
  std::optional<Rational> best_norm_sq;
  /// Feasible point reaching best_norm_sq, when known.
  std::vector<Rational> witness;
  std::vector<PermMatrix> perms;
  std::uint64_t nodes = 0;
};

/// Decides whether the squared norm over the stochastic blocks can reach its target on
/// the system's feasible set. Within [0,1] bounds with line sums <= 1 that happens only at
/// points where every block is a permutation matrix, so the exact answer comes from
/// permutation_point_search. Node-cap exhaustion yields IterationLimit.
NormDecision norm_max_decide(const ConstraintSystem& sys, const NormOptions& options = {});

/// Squared norm of the stochastic-block part of an assignment.
Rational block_norm_sq(const ConstraintSystem& sys, const std::vector<Rational>& x);

}  // namespace bvlab
