#include "bvlab/procedures.hpp"

#include <algorithm>
#include <stdexcept>

#include "bvlab/models.hpp"
#include "bvlab/oracle.hpp"
#include "bvlab/solve.hpp"

namespace bvlab {

std::string to_string(DepletionStatus s) {
  switch (s) {
    case DepletionStatus::Emptied:
      return "EMPTIED";
    case DepletionStatus::Survived:
      return "SURVIVED";
    case DepletionStatus::Vacuous:
      return "VACUOUS";
  }
  return "?";
}

std::string to_string(CutVerdict v) {
  switch (v) {
    case CutVerdict::Yes:
      return "YES";
    case CutVerdict::No:
      return "NO";
    case CutVerdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

DepletionResult clique_depletion(const RatMatrix& g, std::size_t m, std::optional<std::size_t> rounds) {
  if (!g.is_square() || !g.is_nonneg_integer()) throw std::invalid_argument("clique_depletion: G must be a square nonneg integer matrix");
  if (m < 2) throw std::invalid_argument("clique_depletion: m must be at least 2");
  const std::size_t n = g.rows();
  const std::size_t limit = rounds ? *rounds : (n >= m ? n - m + 1 : 1);
  DepletionResult out;
  out.depleted = g;
  if (g.sum() == 0) {
    out.status = DepletionStatus::Vacuous;
    return out;
  }
  const Rational threshold(static_cast<long>(m) - 2);
  for (std::size_t round = 0; round < limit; ++round) {
    ++out.rounds_run;
    const RatMatrix sq = out.depleted * out.depleted;
    std::vector<Cell> removed;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (out.depleted(i, j) != 0 && (sq(i, j) < threshold || sq(j, i) < threshold)) removed.push_back({i, j});
    if (removed.empty()) break;
    for (auto [i, j] : removed) out.depleted(i, j) = 0;
    out.removed.push_back(std::move(removed));
  }
  out.status = out.depleted.sum() == 0 ? DepletionStatus::Emptied : DepletionStatus::Survived;
  return out;
}

CliqueSweep max_clique_via_depletion(const RatMatrix& g, std::size_t start_m) {
  if (start_m > g.rows()) throw std::invalid_argument("max_clique_via_depletion: start_m exceeds n");
  CliqueSweep sweep;
  for (std::size_t m = start_m; m >= 2; --m) {
    const DepletionResult r = clique_depletion(g, m);
    std::size_t removed = 0;
    for (const auto& round : r.removed) removed += round.size();
    sweep.entries.push_back({m, r.status, removed});
    if (r.status != DepletionStatus::Emptied && sweep.largest_surviving == 0) sweep.largest_surviving = m;
  }
  return sweep;
}

CutLoopResult cut_loop(const InstancePair& pair, std::size_t max_iters) {
  const std::size_t n = pair.n();
  const ConstraintSystem base = build_relaxation(pair, Side::Left);
  const VarBlock x = base.block("x");
  CutLoopResult out;
  std::vector<PermMatrix> cut_perms;

  auto add_cut = [&](const PermMatrix& p) {
    std::vector<Cell> cells;
    for (std::size_t i = 0; i < n; ++i) cells.push_back({i, p[i]});
    out.cuts.push_back(std::move(cells));
    cut_perms.push_back(p);
  };
  auto is_cut = [&](const PermMatrix& p) { return std::find(cut_perms.begin(), cut_perms.end(), p) != cut_perms.end(); };

  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    ConstraintSystem::Builder b(base);
    for (const auto& cells : out.cuts) {
      std::vector<Term> terms;
      for (auto [i, j] : cells) terms.push_back({x.index(i, j), 1});
      b.add_row(std::move(terms), Sense::Le, Rational(static_cast<long>(n) - 2), "cut");
    }
    Objective obj{true, {}};
    for (std::size_t v = x.offset; v < x.offset + x.size(); ++v) obj.terms.push_back({v, 1});
    b.set_objective(std::move(obj));
    const ConstraintSystem sys = b.build();
    const SolveOutcome lp = lp_solve(sys);
    CutLoopStep step;
    if (!lp.compatible()) {
      // X = 0 always satisfies the system, so this only happens on an iteration limit.
      out.note = "LP status " + to_string(lp.status);
      out.steps.push_back(step);
      return out;
    }
    step.max_sum = *lp.objective;
    if (step.max_sum < n) {
      out.verdict = CutVerdict::No;
      out.steps.push_back(step);
      return out;
    }
    const RatMatrix w = sys.block_values("x", lp.witness);
    PermMatrix p = bvn_extract_permutation(w).perm;
    if (is_cut(p)) {
      // The cut is satisfied by w, so the decomposition has other terms; take the first uncut one.
      const BvnDecomposition d = bvn_decompose(w);
      auto it = std::find_if(d.terms.begin(), d.terms.end(), [&](const BvnTerm& t) { return !is_cut(t.perm); });
      if (it == d.terms.end()) {
        out.stalled = true;
        out.note = "every decomposition term already cut";
        out.steps.push_back(step);
        return out;
      }
      p = it->perm;
      step.fallback = true;
    }
    step.extracted = p;
    out.steps.push_back(step);
    if (eq1_holds(pair, p)) {
      out.verdict = CutVerdict::Yes;
      out.witness = p;
      return out;
    }
    add_cut(p);
  }
  out.note = "iteration limit";
  return out;
}

}  // namespace bvlab
