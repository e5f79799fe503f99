#include "bvlab/constraint_system.hpp"

#include <algorithm>
#include <stdexcept>

namespace bvlab {

std::string to_string(Sense s) {
  switch (s) {
    case Sense::Le:
      return "<=";
    case Sense::Ge:
      return ">=";
    case Sense::Eq:
      return "=";
  }
  return "?";
}

Rational LinearRow::evaluate(std::span<const Rational> x) const {
  Rational v = 0;
  for (const auto& t : terms) v += t.coeff * x[t.var];
  return v;
}

bool LinearRow::satisfied_by(std::span<const Rational> x) const {
  const Rational v = evaluate(x);
  switch (sense) {
    case Sense::Le:
      return v <= rhs;
    case Sense::Ge:
      return v >= rhs;
    case Sense::Eq:
      return v == rhs;
  }
  return false;
}

const VarBlock& ConstraintSystem::block(const std::string& name) const {
  for (const auto& b : blocks_) {
    if (b.name == name) return b;
  }
  throw std::invalid_argument("no variable block named '" + name + "'");
}

bool ConstraintSystem::has_block(const std::string& name) const {
  return std::any_of(blocks_.begin(), blocks_.end(), [&](const VarBlock& b) { return b.name == name; });
}

const VarBlock& ConstraintSystem::block_of(std::size_t var) const {
  for (const auto& b : blocks_) {
    if (var >= b.offset && var < b.offset + b.size()) return b;
  }
  throw std::out_of_range("variable index out of range");
}

std::string ConstraintSystem::var_name(std::size_t var) const {
  const VarBlock& b = block_of(var);
  const std::size_t local = var - b.offset;
  if (b.cols == 1) return b.name + "[" + std::to_string(local + 1) + "]";
  return b.name + "[" + std::to_string(local / b.cols + 1) + "," + std::to_string(local % b.cols + 1) + "]";
}

bool ConstraintSystem::satisfied_by(std::span<const Rational> x) const {
  if (x.size() != num_vars_) return false;
  for (std::size_t v = 0; v < num_vars_; ++v) {
    if (block_of(v).nonneg && x[v] < 0) return false;
  }
  return std::all_of(rows_.begin(), rows_.end(), [&](const LinearRow& r) { return r.satisfied_by(x); });
}

Rational ConstraintSystem::objective_value(std::span<const Rational> x) const {
  Rational v = 0;
  if (!objective_) return v;
  for (const auto& t : objective_->terms) v += t.coeff * x[t.var];
  return v;
}

RatMatrix ConstraintSystem::block_values(const std::string& name, std::span<const Rational> x) const {
  const VarBlock& b = block(name);
  RatMatrix m(b.rows, b.cols);
  for (std::size_t i = 0; i < b.rows; ++i)
    for (std::size_t j = 0; j < b.cols; ++j) m(i, j) = x[b.index(i, j)];
  return m;
}

ordered_json ConstraintSystem::to_json() const {
  auto coeffs_json = [&](const std::vector<Term>& terms, bool negate) {
    ordered_json c = ordered_json::array();
    for (const auto& t : terms) c.push_back({var_name(t.var), rational_to_json(negate ? Rational(-t.coeff) : t.coeff)});
    return c;
  };
  ordered_json out;
  ordered_json vars = ordered_json::array();
  for (std::size_t v = 0; v < num_vars_; ++v) vars.push_back(var_name(v));
  out["vars"] = std::move(vars);
  ordered_json eq = ordered_json::array();
  ordered_json le = ordered_json::array();
  for (const auto& r : rows_) {
    const bool negate = r.sense == Sense::Ge;
    ordered_json row;
    row["coeffs"] = coeffs_json(r.terms, negate);
    row["rhs"] = rational_to_json(negate ? Rational(-r.rhs) : r.rhs);
    row["tag"] = r.tag;
    (r.sense == Sense::Eq ? eq : le).push_back(std::move(row));
  }
  out["eq"] = std::move(eq);
  out["le"] = std::move(le);
  ordered_json bounds;
  for (const auto& b : blocks_) bounds[b.name] = b.nonneg ? "nonneg" : "free";
  out["bounds"] = std::move(bounds);
  if (objective_) {
    ordered_json obj;
    obj["sense"] = objective_->maximize ? "max" : "min";
    obj["coeffs"] = coeffs_json(objective_->terms, false);
    out["objective"] = std::move(obj);
  } else {
    out["objective"] = nullptr;
  }
  return out;
}

std::size_t ConstraintSystem::Builder::add_block(const std::string& name, std::size_t rows, std::size_t cols,
                                                 bool nonneg, Stochastic stochastic) {
  if (sys_.has_block(name)) throw std::invalid_argument("duplicate block name '" + name + "'");
  if (stochastic != Stochastic::None && rows != cols) {
    throw std::invalid_argument("stochastic block must be square");
  }
  VarBlock b{name, rows, cols, sys_.num_vars_, nonneg, stochastic};
  sys_.blocks_.push_back(b);
  sys_.num_vars_ += b.size();
  return b.offset;
}

namespace {

std::vector<Term> normalize_terms(std::vector<Term> terms, std::size_t num_vars) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  for (auto& t : terms) {
    if (t.var >= num_vars) throw std::invalid_argument("row references an undeclared variable");
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff == 0; });
  return merged;
}

}  // namespace

ConstraintSystem::Builder& ConstraintSystem::Builder::add_row(std::vector<Term> terms, Sense sense, Rational rhs,
                                                              std::string tag) {
  sys_.rows_.push_back({normalize_terms(std::move(terms), sys_.num_vars_), sense, std::move(rhs), std::move(tag)});
  return *this;
}

ConstraintSystem::Builder& ConstraintSystem::Builder::add_stochastic_rows(const std::string& name) {
  const VarBlock b = sys_.block(name);
  if (b.stochastic == Stochastic::None) throw std::invalid_argument("block '" + name + "' has no stochastic kind");
  const Sense sense = b.stochastic == Stochastic::Sub ? Sense::Le : Sense::Eq;
  const std::string tag = "stochastic:" + name;
  for (std::size_t j = 0; j < b.cols; ++j) {
    std::vector<Term> col;
    for (std::size_t i = 0; i < b.rows; ++i) col.push_back({b.index(i, j), 1});
    add_row(std::move(col), sense, 1, tag);
  }
  for (std::size_t i = 0; i < b.rows; ++i) {
    std::vector<Term> row;
    for (std::size_t j = 0; j < b.cols; ++j) row.push_back({b.index(i, j), 1});
    add_row(std::move(row), sense, 1, tag);
  }
  return *this;
}

ConstraintSystem::Builder& ConstraintSystem::Builder::set_objective(Objective obj) {
  obj.terms = normalize_terms(std::move(obj.terms), sys_.num_vars_);
  sys_.objective_ = std::move(obj);
  return *this;
}

ConstraintSystem::Builder& ConstraintSystem::Builder::clear_objective() {
  sys_.objective_.reset();
  return *this;
}

}  // namespace bvlab
