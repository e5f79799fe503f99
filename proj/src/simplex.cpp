#include <algorithm>
#include <stdexcept>

#include "bvlab/solve.hpp"

namespace bvlab {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Feasible:
      return "FEASIBLE";
    case SolveStatus::Infeasible:
      return "INFEASIBLE";
    case SolveStatus::Optimal:
      return "OPTIMAL";
    case SolveStatus::Unbounded:
      return "UNBOUNDED";
    case SolveStatus::IterationLimit:
      return "ITERATION_LIMIT";
  }
  return "?";
}

namespace {

// Tableau in the form  z + r.x = rhs0,  A x = b  with b >= 0 and one basic column per row.
class Tableau {
 public:
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<std::size_t> basis;
  std::vector<Rational> r;
  Rational rhs0;
  std::size_t pivots = 0;

  void pivot(std::size_t row, std::size_t col) {
    ++pivots;
    std::vector<Rational>& pr = a[row];
    const Rational inv = 1 / pr[col];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < pr.size(); ++j) {
      if (pr[j] != 0) {
        pr[j] *= inv;
        nz.push_back(j);
      }
    }
    b[row] *= inv;
    Rational f;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][col] == 0) continue;
      f = a[i][col];
      for (std::size_t j : nz) a[i][j] -= f * pr[j];
      b[i] -= f * b[row];
    }
    if (r[col] != 0) {
      f = r[col];
      for (std::size_t j : nz) r[j] -= f * pr[j];
      rhs0 -= f * b[row];
    }
    basis[row] = col;
  }

  enum class Result { Optimal, Unbounded, Limit };

  // Maximizes with least-index entering and leaving choices; columns >= allowed are barred.
  Result run(std::size_t allowed, std::size_t max_pivots) {
    for (;;) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (r[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return Result::Optimal;
      if (pivots >= max_pivots) return Result::Limit;
      std::size_t leave = a.size();
      Rational best;
      Rational ratio;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i][enter] <= 0) continue;
        ratio = b[i] / a[i][enter];
        if (leave == a.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == a.size()) return Result::Unbounded;
      pivot(leave, enter);
    }
  }

  void erase_row(std::size_t i) {
    a.erase(a.begin() + static_cast<std::ptrdiff_t>(i));
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(i));
    basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
  }
};

struct Column {
  std::size_t var;
  int sign;
};

}  // namespace

SolveOutcome lp_solve(const ConstraintSystem& sys, const LpOptions& options) {
  SolveOutcome out;

  // Structural columns: one per nonnegative variable, two for a free one.
  std::vector<Column> columns;
  std::vector<std::vector<std::size_t>> var_columns(sys.num_vars());
  for (std::size_t v = 0; v < sys.num_vars(); ++v) {
    var_columns[v].push_back(columns.size());
    columns.push_back({v, 1});
    if (!sys.block_of(v).nonneg) {
      var_columns[v].push_back(columns.size());
      columns.push_back({v, -1});
    }
  }
  const std::size_t structural = columns.size();

  struct StdRow {
    const LinearRow* row;
    bool negate;
    Sense sense;
  };
  std::vector<StdRow> rows;
  for (const auto& row : sys.rows()) {
    if (row.terms.empty()) {
      if (!row.satisfied_by({})) {
        out.status = SolveStatus::Infeasible;
        return out;
      }
      continue;
    }
    const bool negate = row.rhs < 0;
    Sense sense = row.sense;
    if (negate && sense != Sense::Eq) sense = sense == Sense::Le ? Sense::Ge : Sense::Le;
    rows.push_back({&row, negate, sense});
  }

  std::size_t slack_count = 0;
  std::size_t art_count = 0;
  for (const auto& r : rows) {
    if (r.sense != Sense::Eq) ++slack_count;
    if (r.sense != Sense::Le) ++art_count;
  }
  const std::size_t first_art = structural + slack_count;
  const std::size_t width = first_art + art_count;

  Tableau t;
  t.a.assign(rows.size(), std::vector<Rational>(width));
  t.b.resize(rows.size());
  t.basis.resize(rows.size());
  t.r.assign(width, 0);
  std::size_t next_slack = structural;
  std::size_t next_art = first_art;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Rational sign = rows[i].negate ? -1 : 1;
    for (const auto& term : rows[i].row->terms) {
      for (std::size_t c : var_columns[term.var]) t.a[i][c] += sign * columns[c].sign * term.coeff;
    }
    t.b[i] = sign * rows[i].row->rhs;
    switch (rows[i].sense) {
      case Sense::Le:
        t.a[i][next_slack] = 1;
        t.basis[i] = next_slack++;
        break;
      case Sense::Ge:
        t.a[i][next_slack++] = -1;
        t.a[i][next_art] = 1;
        t.basis[i] = next_art++;
        break;
      case Sense::Eq:
        t.a[i][next_art] = 1;
        t.basis[i] = next_art++;
        break;
    }
  }

  // Phase 1: maximize -(sum of artificials).
  if (art_count > 0) {
    for (std::size_t j = first_art; j < width; ++j) t.r[j] = 1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (t.basis[i] < first_art) continue;
      for (std::size_t j = 0; j < width; ++j) t.r[j] -= t.a[i][j];
      t.rhs0 -= t.b[i];
    }
    const auto res = t.run(width, options.max_pivots);
    out.iterations = t.pivots;
    if (res == Tableau::Result::Limit) {
      out.status = SolveStatus::IterationLimit;
      return out;
    }
    if (t.rhs0 != 0) {
      out.status = SolveStatus::Infeasible;
      return out;
    }
    // Drive zero-valued artificials out of the basis; rows that cannot be pivoted are redundant.
    for (std::size_t i = 0; i < t.a.size();) {
      if (t.basis[i] < first_art) {
        ++i;
        continue;
      }
      std::size_t col = first_art;
      for (std::size_t j = 0; j < first_art; ++j) {
        if (t.a[i][j] != 0) {
          col = j;
          break;
        }
      }
      if (col == first_art) {
        t.erase_row(i);
      } else {
        t.pivot(i, col);
        ++i;
      }
    }
  }

  // Phase 2.
  std::fill(t.r.begin(), t.r.end(), Rational(0));
  t.rhs0 = 0;
  const auto& objective = sys.objective();
  if (objective) {
    for (const auto& term : objective->terms) {
      const Rational c = objective->maximize ? term.coeff : Rational(-term.coeff);
      for (std::size_t col : var_columns[term.var]) t.r[col] -= columns[col].sign * c;
    }
    for (std::size_t i = 0; i < t.a.size(); ++i) {
      const Rational f = t.r[t.basis[i]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < width; ++j) {
        if (t.a[i][j] != 0) t.r[j] -= f * t.a[i][j];
      }
      t.rhs0 -= f * t.b[i];
    }
    const auto res = t.run(first_art, options.max_pivots);
    out.iterations = t.pivots;
    if (res == Tableau::Result::Limit) {
      out.status = SolveStatus::IterationLimit;
      return out;
    }
    if (res == Tableau::Result::Unbounded) {
      out.status = SolveStatus::Unbounded;
      return out;
    }
  }
  out.iterations = t.pivots;

  std::vector<Rational> col_value(width, 0);
  for (std::size_t i = 0; i < t.a.size(); ++i) col_value[t.basis[i]] = t.b[i];
  out.witness.assign(sys.num_vars(), 0);
  for (std::size_t c = 0; c < structural; ++c) {
    out.witness[columns[c].var] += columns[c].sign * col_value[c];
  }
  if (!sys.satisfied_by(out.witness)) throw std::logic_error("lp_solve: witness failed substitution check");
  if (objective) {
    out.status = SolveStatus::Optimal;
    out.objective = sys.objective_value(out.witness);
  } else {
    out.status = SolveStatus::Feasible;
  }
  return out;
}

ordered_json outcome_to_json(const SolveOutcome& out, const ConstraintSystem* sys) {
  ordered_json j;
  j["status"] = to_string(out.status);
  if (!out.witness.empty()) {
    if (sys != nullptr) {
      ordered_json w;
      for (std::size_t v = 0; v < out.witness.size(); ++v) w[sys->var_name(v)] = rational_to_json(out.witness[v]);
      j["witness"] = std::move(w);
    } else {
      j["witness"] = rationals_to_json(out.witness);
    }
  }
  if (out.objective) j["objective"] = rational_to_json(*out.objective);
  j["iterations"] = out.iterations;
  if (!out.certificate.empty()) j["certificate"] = rationals_to_json(out.certificate);
  return j;
}

}  // namespace bvlab
