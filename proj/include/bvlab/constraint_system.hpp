#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bvlab/json_io.hpp"
#include "bvlab/matrix.hpp"

namespace bvlab {

enum class Sense { Le, Ge, Eq };

/// Row/column-sum structure attached to a square block, if any.
enum class Stochastic { None, Sub, Doubly };

struct VarBlock {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t offset = 0;
  bool nonneg = true;
  Stochastic stochastic = Stochastic::None;

  std::size_t size() const { return rows * cols; }
  std::size_t index(std::size_t i, std::size_t j) const { return offset + i * cols + j; }
};

struct Term {
  std::size_t var = 0;
  Rational coeff;
};

struct LinearRow {
  std::vector<Term> terms;  ///< sorted by variable, no zero coefficients
  Sense sense = Sense::Eq;
  Rational rhs;
  /// Free-form origin label. Rows generated by add_stochastic_rows are tagged "stochastic:<block>".
  std::string tag;

  Rational evaluate(std::span<const Rational> x) const;
  bool satisfied_by(std::span<const Rational> x) const;
};

struct Objective {
  bool maximize = false;
  std::vector<Term> terms;
};

/// Linear system over named variable blocks. Immutable once built; use Builder to derive.
class ConstraintSystem {
 public:
  class Builder;

  const std::vector<VarBlock>& blocks() const { return blocks_; }
  const VarBlock& block(const std::string& name) const;
  bool has_block(const std::string& name) const;
  std::size_t num_vars() const { return num_vars_; }
  const std::vector<LinearRow>& rows() const { return rows_; }
  const std::optional<Objective>& objective() const { return objective_; }

  std::string var_name(std::size_t var) const;
  const VarBlock& block_of(std::size_t var) const;

  bool satisfied_by(std::span<const Rational> x) const;
  Rational objective_value(std::span<const Rational> x) const;

  /// Values of one block as a matrix.
  RatMatrix block_values(const std::string& name, std::span<const Rational> x) const;

  /// {vars, eq:[{coeffs, rhs, tag}], le:[...], bounds, objective}; >= rows are negated into le.
  ordered_json to_json() const;

 private:
  std::vector<VarBlock> blocks_;
  std::size_t num_vars_ = 0;
  std::vector<LinearRow> rows_;
  std::optional<Objective> objective_;
};

class ConstraintSystem::Builder {
 public:
  Builder() = default;
  /// Starts from a copy of an existing system.
  explicit Builder(const ConstraintSystem& base) : sys_(base) {}

  /// Adds a block and returns its offset. Names must be unique.
  std::size_t add_block(const std::string& name, std::size_t rows, std::size_t cols, bool nonneg = true,
                        Stochastic stochastic = Stochastic::None);

  /// Merges duplicate variables and drops zero coefficients.
  Builder& add_row(std::vector<Term> terms, Sense sense, Rational rhs, std::string tag = {});

  /// Row and column sums of a square block: <= 1 for Sub, == 1 for Doubly.
  Builder& add_stochastic_rows(const std::string& block);

  Builder& set_objective(Objective obj);
  Builder& clear_objective();

  const VarBlock& block(const std::string& name) const { return sys_.block(name); }

  ConstraintSystem build() const { return sys_; }

 private:
  ConstraintSystem sys_;
};

std::string to_string(Sense s);

}  // namespace bvlab
