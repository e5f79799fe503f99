#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bvlab/constraint_system.hpp"
#include "bvlab/json_io.hpp"
#include "bvlab/matrix.hpp"

namespace bvlab {

enum class SolveStatus { Feasible, Infeasible, Optimal, Unbounded, IterationLimit };

std::string to_string(SolveStatus s);

struct SolveOutcome {
  SolveStatus status = SolveStatus::Infeasible;
  /// One value per variable; empty unless Feasible or Optimal.
  std::vector<Rational> witness;
  std::optional<Rational> objective;
  std::size_t iterations = 0;
  /// linsys_solve only: y with y^T A = 0 and y^T b != 0.
  std::vector<Rational> certificate;

  bool compatible() const { return status == SolveStatus::Feasible || status == SolveStatus::Optimal; }
};

struct LpOptions {
  std::size_t max_pivots = 500000;
};

/// Two-phase dense tableau simplex over exact rationals with least-index pivoting.
/// Without an objective the result is Feasible/Infeasible. Witnesses are re-checked by
/// substitution; a failed check throws std::logic_error.
SolveOutcome lp_solve(const ConstraintSystem& sys, const LpOptions& options = {});

/// Gaussian elimination for A y = b. Free variables of the particular solution are 0.
SolveOutcome linsys_solve(const RatMatrix& a, const std::vector<Rational>& b);

/// {status, witness?, objective?, iterations} with witness keyed by variable name.
ordered_json outcome_to_json(const SolveOutcome& out, const ConstraintSystem* sys = nullptr);

}  // namespace bvlab
