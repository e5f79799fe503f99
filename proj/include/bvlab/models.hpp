#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bvlab/constraint_system.hpp"
#include "bvlab/matrix.hpp"
#include "bvlab/reductions.hpp"

namespace bvlab {

/// Size limits for the factorial-size and search-based models.
struct Caps {
  std::size_t symmetric_n = 6;        ///< n! lambda variables
  std::uint64_t pair_count = 20000;   ///< n!*k! (or n!+k!) lambda variables
  std::size_t exact_single_n = 8;     ///< single-block norm decision
  std::uint64_t search_nodes = 20'000'000;
  std::size_t anchored_n = 6;         ///< one LP per permutation R
  std::size_t relaxation_n = 12;      ///< any LP over an n x n block
  std::size_t arc_count = 12;         ///< host arcs k for the two-block incidence models

  /// "key=value,key=value"; unknown keys throw.
  static Caps parse(const std::string& text, Caps base);
  static Caps parse(const std::string& text);
  /// Applies BVLAB_CAPS from the environment on top of base, if set.
  static Caps from_env(Caps base);
  static Caps from_env();
  std::string to_string() const;
};

enum class Side { Left, Right };

/// LEFT: G X >= X S. RIGHT: X^T G >= S X^T. EQUAL pairs get equalities instead.
/// Block "x" is n x n, substochastic.
ConstraintSystem build_relaxation(const InstancePair& pair, Side side = Side::Left);

struct ConvexCheck {
  ConstraintSystem sys;
  Rational target;  ///< squared norm n
};

ConvexCheck build_convex_check(const InstancePair& pair);

/// Relaxation plus X >= R entrywise.
ConstraintSystem build_anchored_system(const InstancePair& pair, const PermMatrix& r);

/// G1 (n x p), G2 (p x n), S1 (n x p), S2 (p x n).
struct Factors {
  RatMatrix g1, g2, s1, s2;
};

/// G1 >= X S1, G2 >= S2 X^T with X doubly stochastic. With only the substochastic bounds
/// X = 0 would always be feasible. Checks G >= G1 G2 and S >= S1 S2.
ConstraintSystem build_factored_system(const InstancePair& pair, const Factors& f);

/// Factors from the incidence decompositions with the pattern side zero-padded to k
/// columns: G1 = O_G, G2 = I_G^T, S1 = (O_S 0), S2 = (I_S 0)^T. With a vertex map, the
/// host arcs are first reordered so each pattern arc sits over its image.
Factors incidence_factors(const InstancePair& pair, const std::vector<std::size_t>* map = nullptr);

enum class SymmetricObjective { Count, Atsp };

struct SymmetricLp {
  ConstraintSystem sys;  ///< block "lambda" with one entry per permutation
  std::vector<PermMatrix> perms;
};

/// sum_i lambda_i X_i S X_i^T <= G (= for EQUAL), sum lambda = 1, lambda >= 0.
/// X_i runs over all n! permutations in lexicographic order, x[host][pattern] convention.
SymmetricLp build_symmetric_lp(const InstancePair& pair, SymmetricObjective objective, const Caps& caps,
                               const RatMatrix* weights = nullptr);

struct SymmetricIntegerResult {
  bool compatible = false;
  /// Indices (into all_permutations) of the first nonempty 0/1 solution found.
  std::vector<std::size_t> chosen;
  std::uint64_t nodes = 0;
};

/// The 0/1 version: a nonempty set T with sum_{i in T} X_i S X_i^T <= G (= for EQUAL).
/// Depth-first over subsets; partial sums exceeding G are cut.
SymmetricIntegerResult symmetric_integer_decide(const InstancePair& pair, const Caps& caps);

}  // namespace bvlab
