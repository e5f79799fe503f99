#include "bvlab/runner.hpp"

#include <algorithm>
#include <stdexcept>

#include "bvlab/incidence.hpp"
#include "bvlab/matcore.hpp"
#include "bvlab/oracle.hpp"
#include "bvlab/procedures.hpp"
#include "bvlab/solve.hpp"

namespace bvlab {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "YES";
    case Verdict::No:
      return "NO";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
    case Verdict::Skipped:
      return "SKIPPED";
    case Verdict::Error:
      return "ERROR";
  }
  return "?";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "YES") return Verdict::Yes;
  if (s == "NO") return Verdict::No;
  if (s == "INCONCLUSIVE") return Verdict::Inconclusive;
  if (s == "SKIPPED") return Verdict::Skipped;
  if (s == "ERROR") return Verdict::Error;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names{
      "relaxation", "relaxation-right", "convex",   "anchored",   "factored",
      "symmetric",  "incidence-symmetric", "incidence-necessary", "incidence-convex",
      "incidence-lp", "asymmetric", "cutloop", "depletion"};
  return names;
}

bool is_model_name(const std::string& name) {
  const auto& names = model_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

namespace {

InstancePair padded_pair(const InstancePair& pair) { return pair.padded() ? pair : pad_pattern(pair); }

void require_size(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap) throw CapExceeded(std::string(what) + ": n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
}

ConstraintSystem with_sum_objective(const ConstraintSystem& sys, const std::string& block) {
  ConstraintSystem::Builder b(sys);
  const VarBlock x = sys.block(block);
  Objective obj{true, {}};
  for (std::size_t v = x.offset; v < x.offset + x.size(); ++v) obj.terms.push_back({v, 1});
  b.set_objective(std::move(obj));
  return b.build();
}

struct IncidenceData {
  IncidencePair g, s;
};

IncidenceData incidence_of(const InstancePair& padded) {
  if (padded.relation == Relation::Equal) throw CapExceeded("incidence models cover the COVER relation only");
  return {incidence_decompose(padded.G), incidence_decompose(padded.S)};
}

NormOptions norm_options(const RunOptions& o) {
  NormOptions n;
  n.search.node_cap = o.caps.search_nodes;
  n.search.parallel = o.parallel;
  n.heuristic = o.norm_heuristic;
  return n;
}

void apply_norm(const NormDecision& d, ModelResult& r) {
  r.verdict = d.verdict == NormVerdict::Yes ? Verdict::Yes : d.verdict == NormVerdict::No ? Verdict::No : Verdict::Inconclusive;
  r.details["target_norm_sq"] = rational_to_json(d.target);
  if (d.best_norm_sq) r.details["best_norm_sq"] = rational_to_json(*d.best_norm_sq);
  r.details["heuristic_history"] = rationals_to_json(d.heuristic_history);
  ordered_json perms = ordered_json::array();
  for (const auto& p : d.perms) perms.push_back(perm_to_json(p));
  if (!d.perms.empty()) r.details["perms"] = std::move(perms);
  r.witness = d.witness;
  r.iterations = d.heuristic_history.size();
  if (d.verdict == NormVerdict::IterationLimit) r.note = "search node cap reached";
}

ModelResult run_unchecked(const std::string& name, const InstancePair& pair, const RunOptions& o) {
  ModelResult r;
  r.model = name;
  const InstancePair padded = padded_pair(pair);
  const std::size_t n = padded.n();

  if (name == "relaxation" || name == "relaxation-right") {
    require_size(n, o.caps.relaxation_n, name.c_str());
    const auto sys = with_sum_objective(build_relaxation(padded, name == "relaxation" ? Side::Left : Side::Right), "x");
    const SolveOutcome lp = lp_solve(sys);
    r.iterations = lp.iterations;
    if (!lp.compatible()) {
      r.verdict = lp.status == SolveStatus::IterationLimit ? Verdict::Inconclusive : Verdict::No;
      r.note = to_string(lp.status);
      return r;
    }
    // X = 0 is always feasible; the verdict asks for a doubly stochastic point.
    r.details["max_sum"] = rational_to_json(*lp.objective);
    r.witness = lp.witness;
    r.verdict = *lp.objective == n ? Verdict::Yes : Verdict::No;
    if (r.verdict == Verdict::Yes) {
      const RatMatrix w = sys.block_values("x", lp.witness);
      r.alpha = bvn_decompose(w).terms.size();
      r.details["is_permutation"] = PermMatrix::from_matrix(w).has_value();
    }
    return r;
  }

  if (name == "convex") {
    require_size(n, o.caps.exact_single_n, name.c_str());
    const ConvexCheck cc = build_convex_check(padded);
    apply_norm(norm_max_decide(cc.sys, norm_options(o)), r);
    return r;
  }

  if (name == "anchored") {
    require_size(n, o.caps.anchored_n, name.c_str());
    r.verdict = Verdict::No;
    for (const auto& rr : all_permutations(n)) {
      const ConstraintSystem sys = build_anchored_system(padded, rr);
      const SolveOutcome lp = lp_solve(sys);
      ++r.iterations;
      if (lp.status == SolveStatus::IterationLimit) {
        r.verdict = Verdict::Inconclusive;
        r.note = "LP iteration limit";
        return r;
      }
      if (lp.compatible()) {
        if (!(sys.block_values("x", lp.witness) == rr.to_matrix())) {
          throw std::logic_error("anchored system feasible at a point other than R");
        }
        r.verdict = Verdict::Yes;
        r.witness = lp.witness;
        r.details["anchor"] = perm_to_json(rr);
        return r;
      }
    }
    return r;
  }

  if (name == "factored") {
    require_size(n, o.caps.relaxation_n, name.c_str());
    if (padded.S.sum() > padded.G.sum()) {
      r.verdict = Verdict::Inconclusive;
      r.note = "pattern has more arcs than the instance; no factors";
      return r;
    }
    const ConstraintSystem sys = build_factored_system(padded, incidence_factors(padded));
    const SolveOutcome lp = lp_solve(sys);
    r.iterations = lp.iterations;
    r.verdict = lp.compatible() ? Verdict::Yes : Verdict::Inconclusive;
    r.witness = lp.witness;
    if (!lp.compatible()) r.note = "infeasible factored system certifies nothing";
    return r;
  }

  if (name == "symmetric") {
    const SymmetricLp s = build_symmetric_lp(padded, SymmetricObjective::Count, o.caps);
    const SolveOutcome lp = lp_solve(s.sys);
    r.iterations = lp.iterations;
    r.verdict = lp.compatible() ? Verdict::Yes : lp.status == SolveStatus::IterationLimit ? Verdict::Inconclusive : Verdict::No;
    r.witness = lp.witness;
    if (lp.objective) r.details["objective"] = rational_to_json(*lp.objective);
    return r;
  }

  if (name == "incidence-symmetric" || name == "incidence-necessary") {
    const IncidenceData d = incidence_of(padded);
    if (d.s.arcs() > d.g.arcs()) {
      r.verdict = Verdict::No;
      r.note = "pattern has more arcs than the instance";
      return r;
    }
    const ConstraintSystem sys = name == "incidence-symmetric" ? build_incidence_symmetric(d.g, d.s, o.caps).sys
                                                               : build_necessary_system(d.g, d.s, o.caps);
    const PresolveResult pre = presolve_zero_rhs(sys);
    r.details["presolve_fixed"] = pre.fixed.size();
    r.details["variables"] = sys.num_vars();
    if (pre.decided_no) {
      r.verdict = Verdict::No;
      r.note = "decided by zero-rhs presolve";
      return r;
    }
    const SolveOutcome lp = lp_solve(pre.sys);
    r.iterations = lp.iterations;
    r.verdict = lp.compatible() ? Verdict::Yes : lp.status == SolveStatus::IterationLimit ? Verdict::Inconclusive : Verdict::No;
    r.witness = lp.witness;
    return r;
  }

  if (name == "incidence-convex" || name == "incidence-lp") {
    const IncidenceData d = incidence_of(padded);
    if (d.s.arcs() > d.g.arcs()) {
      r.verdict = Verdict::No;
      r.note = "pattern has more arcs than the instance";
      return r;
    }
    require_size(d.g.arcs(), o.caps.arc_count, "host arc count");
    const IncidenceConvexCheck cc = build_incidence_convex_check(d.g, d.s);
    if (name == "incidence-convex") {
      apply_norm(norm_max_decide(cc.sys, norm_options(o)), r);
      return r;
    }
    const SolveOutcome lp = lp_solve(cc.sys);
    r.iterations = lp.iterations;
    r.verdict = lp.compatible() ? Verdict::Yes : lp.status == SolveStatus::IterationLimit ? Verdict::Inconclusive : Verdict::No;
    r.witness = lp.witness;
    if (lp.compatible()) {
      r.details["quadratic_condition"] = check_quadratic_condition(cc.sys.block_values("z", lp.witness), d.s.arcs());
    }
    return r;
  }

  if (name == "asymmetric") {
    const IncidenceData d = incidence_of(padded);
    if (d.s.arcs() > d.g.arcs()) {
      r.verdict = Verdict::No;
      r.note = "pattern has more arcs than the instance";
      return r;
    }
    if (d.g.arcs() == 0) {
      // No host arcs and no pattern arcs: the pattern is edgeless and always embeds.
      r.verdict = Verdict::Yes;
      r.note = "no arcs on either side";
      return r;
    }
    require_size(d.g.arcs(), o.caps.arc_count, "host arc count");
    const AsymmetricModel model = build_asymmetric_model(d.g, d.s, o.generator, o.caps);
    const SolveOutcome sol = decide_asymmetric(model);
    r.details["beta"] = model.beta;
    r.details["bound_2nl"] = 2 * n * d.s.arcs();
    r.details["generator"] = to_string(o.generator);
    r.details["x_family"] = model.x_family.size();
    r.details["z_family"] = model.z_family.size();
    r.iterations = sol.iterations;
    r.verdict = sol.compatible() ? Verdict::Yes : Verdict::No;
    r.witness = sol.witness;
    return r;
  }

  if (name == "cutloop") {
    require_size(n, o.caps.relaxation_n, name.c_str());
    const CutLoopResult c = cut_loop(padded, o.cut_iters);
    r.verdict = c.verdict == CutVerdict::Yes ? Verdict::Yes : c.verdict == CutVerdict::No ? Verdict::No : Verdict::Inconclusive;
    r.iterations = c.steps.size();
    r.cuts = c.cuts.size();
    r.note = c.note;
    r.details["stalled"] = c.stalled;
    if (c.witness) {
      r.details["witness"] = perm_to_json(*c.witness);
      r.witness = vectorize(c.witness->to_matrix());
    }
    return r;
  }

  if (name == "depletion") {
    if (pair.provenance != "clique") {
      r.verdict = Verdict::Skipped;
      r.note = "depletion applies to clique pairs";
      return r;
    }
    const DepletionResult d = clique_depletion(pair.G, pair.m);
    std::size_t removed = 0;
    for (const auto& round : d.removed) removed += round.size();
    r.details["status"] = to_string(d.status);
    r.details["removed"] = removed;
    r.iterations = d.rounds_run;
    r.verdict = d.status == DepletionStatus::Emptied ? Verdict::No : Verdict::Inconclusive;
    return r;
  }

  throw std::invalid_argument("unknown model '" + name + "'");
}

}  // namespace

ModelResult run_model(const std::string& name, const InstancePair& pair, const RunOptions& options) {
  if (!is_model_name(name)) throw std::invalid_argument("unknown model '" + name + "'");
  try {
    return run_unchecked(name, pair, options);
  } catch (const CapExceeded& e) {
    ModelResult r;
    r.model = name;
    r.verdict = Verdict::Skipped;
    r.note = e.what();
    return r;
  } catch (const std::exception& e) {
    ModelResult r;
    r.model = name;
    r.verdict = Verdict::Error;
    r.note = e.what();
    return r;
  }
}

bool substitute_witness(const InstancePair& pair, const ModelResult& r, const RunOptions& o) {
  if (r.witness.empty()) return true;
  const InstancePair padded = padded_pair(pair);
  const std::string& name = r.model;
  if (name == "relaxation" || name == "convex" || name == "cutloop") {
    if (!build_relaxation(padded, Side::Left).satisfied_by(r.witness)) return false;
    if (name != "cutloop") return true;
    const auto p = PermMatrix::from_matrix(RatMatrix(padded.n(), padded.n(), r.witness));
    return p && eq1_holds(padded, *p);
  }
  if (name == "relaxation-right") return build_relaxation(padded, Side::Right).satisfied_by(r.witness);
  if (name == "anchored") {
    return build_anchored_system(padded, perm_from_json(json::parse(r.details.at("anchor").dump()))).satisfied_by(r.witness);
  }
  if (name == "factored") return build_factored_system(padded, incidence_factors(padded)).satisfied_by(r.witness);
  if (name == "symmetric") return build_symmetric_lp(padded, SymmetricObjective::Count, o.caps).sys.satisfied_by(r.witness);
  const IncidenceData d = incidence_of(padded);
  if (name == "incidence-symmetric") return build_incidence_symmetric(d.g, d.s, o.caps).sys.satisfied_by(r.witness);
  if (name == "incidence-necessary") return build_necessary_system(d.g, d.s, o.caps).satisfied_by(r.witness);
  if (name == "incidence-convex" || name == "incidence-lp") {
    return build_incidence_convex_check(d.g, d.s).sys.satisfied_by(r.witness);
  }
  if (name == "asymmetric") {
    const AsymmetricModel model = build_asymmetric_model(d.g, d.s, o.generator, o.caps);
    if (r.witness.size() != model.beta) return false;
    RatMatrix sum(model.rhs.rows(), model.rhs.cols());
    for (std::size_t i = 0; i < model.beta; ++i) sum += r.witness[i] * model.basis[i];
    return sum == model.rhs;
  }
  return true;
}

ordered_json model_result_to_json(const ModelResult& r) {
  ordered_json j;
  j["model"] = r.model;
  j["verdict"] = to_string(r.verdict);
  j["iterations"] = r.iterations;
  if (r.cuts) j["cuts"] = *r.cuts;
  if (r.alpha) j["alpha"] = *r.alpha;
  j["details"] = r.details;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

}  // namespace bvlab
