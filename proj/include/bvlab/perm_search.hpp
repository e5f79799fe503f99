#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bvlab/constraint_system.hpp"
#include "bvlab/matrix.hpp"

namespace bvlab {

enum class SearchStatus { Found, NotFound, NodeLimit };

std::string to_string(SearchStatus s);

struct PermSearchOptions {
  /// Per first-line branch, so serial and parallel runs stop at the same places.
  std::uint64_t node_cap = 20'000'000;
  bool parallel = true;
};

struct PermSearchResult {
  SearchStatus status = SearchStatus::NotFound;
  /// One permutation per stochastic block, in block order.
  std::vector<PermMatrix> perms;
  /// 0/1 assignment of every variable.
  std::vector<Rational> witness;
  std::uint64_t nodes = 0;
};

/// Looks for a point of the system at which every stochastic block is a permutation
/// matrix. Rows tagged "stochastic:..." are implied by that and skipped. All variables
/// must belong to square stochastic blocks of size <= 64.
///
/// Each block is branched line by line, over rows or over columns, whichever side has
/// fewer lines that occur in the remaining rows. Partial assignments are cut when some
/// row's attainable interval (min/max over free positions per open line) misses its rhs.
/// The parallel mode splits on the first line; the lowest-index success wins.
PermSearchResult permutation_point_search(const ConstraintSystem& sys, const PermSearchOptions& options = {});

}  // namespace bvlab
