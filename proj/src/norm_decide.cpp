#include "bvlab/norm_decide.hpp"

#include "bvlab/solve.hpp"

namespace bvlab {

std::string to_string(NormVerdict v) {
  switch (v) {
    case NormVerdict::Yes:
      return "YES";
    case NormVerdict::No:
      return "NO";
    case NormVerdict::IterationLimit:
      return "ITERATION_LIMIT";
  }
  return "?";
}

Rational block_norm_sq(const ConstraintSystem& sys, const std::vector<Rational>& x) {
  Rational s = 0;
  for (const auto& b : sys.blocks()) {
    if (b.stochastic == Stochastic::None) continue;
    for (std::size_t v = b.offset; v < b.offset + b.size(); ++v) s += x[v] * x[v];
  }
  return s;
}

namespace {

// Maximize <c, x> over the stochastic-block variables, c taken from the previous point
// (all ones in the first round). Each round cannot lower the norm: <w, w'> >= <w, w> and
// Cauchy-Schwarz give |w'| >= |w|.
void run_heuristic(const ConstraintSystem& sys, const NormOptions& options, NormDecision& out) {
  std::vector<Rational> weights(sys.num_vars(), 0);
  for (const auto& b : sys.blocks()) {
    if (b.stochastic == Stochastic::None) continue;
    for (std::size_t v = b.offset; v < b.offset + b.size(); ++v) weights[v] = 1;
  }
  std::vector<Rational> best;
  for (std::size_t round = 0; round < options.heuristic_rounds; ++round) {
    Objective obj{true, {}};
    for (std::size_t v = 0; v < weights.size(); ++v) {
      if (weights[v] != 0) obj.terms.push_back({v, weights[v]});
    }
    ConstraintSystem::Builder builder(sys);
    builder.set_objective(std::move(obj));
    const SolveOutcome res = lp_solve(builder.build());
    if (!res.compatible()) break;
    const Rational norm = block_norm_sq(sys, res.witness);
    if (!out.heuristic_history.empty() && norm <= out.heuristic_history.back()) break;
    out.heuristic_history.push_back(norm);
    best = res.witness;
    weights = res.witness;
    for (const auto& b : sys.blocks()) {
      if (b.stochastic != Stochastic::None) continue;
      for (std::size_t v = b.offset; v < b.offset + b.size(); ++v) weights[v] = 0;
    }
  }
  if (!best.empty()) {
    out.best_norm_sq = out.heuristic_history.back();
    out.witness = std::move(best);
  }
}

}  // namespace

NormDecision norm_max_decide(const ConstraintSystem& sys, const NormOptions& options) {
  NormDecision out;
  out.target = 0;
  for (const auto& b : sys.blocks()) {
    if (b.stochastic != Stochastic::None) out.target += b.rows;
  }
  if (options.heuristic) run_heuristic(sys, options, out);

  const PermSearchResult search = permutation_point_search(sys, options.search);
  out.nodes = search.nodes;
  switch (search.status) {
    case SearchStatus::Found:
      out.verdict = NormVerdict::Yes;
      out.best_norm_sq = out.target;
      out.witness = search.witness;
      out.perms = search.perms;
      break;
    case SearchStatus::NotFound:
      out.verdict = NormVerdict::No;
      break;
    case SearchStatus::NodeLimit:
      out.verdict = NormVerdict::IterationLimit;
      break;
  }
  return out;
}

}  // namespace bvlab
