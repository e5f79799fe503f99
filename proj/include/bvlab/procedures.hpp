#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bvlab/matcore.hpp"
#include "bvlab/matrix.hpp"
#include "bvlab/reductions.hpp"

namespace bvlab {

enum class DepletionStatus { Emptied, Survived, Vacuous };

std::string to_string(DepletionStatus s);

struct DepletionResult {
  RatMatrix depleted;
  /// Cells zeroed in each round that removed something.
  std::vector<std::vector<Cell>> removed;
  std::size_t rounds_run = 0;
  DepletionStatus status = DepletionStatus::Survived;
};

/// Each round squares the current matrix and zeroes every nonzero entry (i, j) with
/// (G^2)_ij < m - 2 or (G^2)_ji < m - 2. Stops at a fixpoint or after `rounds` rounds
/// (default n - m + 1). Loops are treated like any other entry.
DepletionResult clique_depletion(const RatMatrix& g, std::size_t m, std::optional<std::size_t> rounds = std::nullopt);

struct CliqueSweepEntry {
  std::size_t m = 0;
  DepletionStatus status = DepletionStatus::Survived;
  std::size_t removed_arcs = 0;
};

struct CliqueSweep {
  std::vector<CliqueSweepEntry> entries;  ///< m from start_m down to 2
  /// Largest m the graph was not emptied at; 0 when every size was emptied.
  std::size_t largest_surviving = 0;
};

CliqueSweep max_clique_via_depletion(const RatMatrix& g, std::size_t start_m);

enum class CutVerdict { Yes, No, Inconclusive };

std::string to_string(CutVerdict v);

struct CutLoopStep {
  Rational max_sum;             ///< max sum of x over the current system
  std::optional<PermMatrix> extracted;
  bool fallback = false;        ///< extracted from the decomposition, not the greedy pass
};

struct CutLoopResult {
  CutVerdict verdict = CutVerdict::Inconclusive;
  std::optional<PermMatrix> witness;
  /// Cell sets of the permutations cut off, in order.
  std::vector<std::vector<Cell>> cuts;
  std::vector<CutLoopStep> steps;
  bool stalled = false;
  std::string note;
};

/// Iterates: maximize sum x over the relaxation plus cuts. Below n means no permutation
/// survives, so NO. Otherwise the optimum is doubly stochastic; a permutation is
/// extracted and tested against the matrix relation. A failing one is cut with
/// sum over its cells <= n - 2, which every other permutation satisfies.
CutLoopResult cut_loop(const InstancePair& pair, std::size_t max_iters);

}  // namespace bvlab
