#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bvlab/incidence_models.hpp"
#include "bvlab/json_io.hpp"
#include "bvlab/models.hpp"
#include "bvlab/norm_decide.hpp"
#include "bvlab/reductions.hpp"

namespace bvlab {

enum class Verdict { Yes, No, Inconclusive, Skipped, Error };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct RunOptions {
  Caps caps;
  std::size_t cut_iters = 50;
  bool parallel = true;
  /// Iterated-LP lower bound inside the norm decisions.
  bool norm_heuristic = true;
  BasisGenerator generator = BasisGenerator::GreedyPoly;
};

struct ModelResult {
  std::string model;
  Verdict verdict = Verdict::Error;
  std::string note;
  /// Model-specific numbers (objective values, basis size, heuristic history, ...).
  ordered_json details = ordered_json::object();
  /// Values that make the model's system hold; checked again by substitute_witness.
  std::vector<Rational> witness;
  std::size_t iterations = 0;
  std::optional<std::size_t> cuts;
  /// BvN term count of a doubly stochastic optimum, when one was decomposed.
  std::optional<std::size_t> alpha;
};

/// relaxation, relaxation-right, convex, anchored, factored, symmetric,
/// incidence-symmetric, incidence-necessary, incidence-convex, incidence-lp,
/// asymmetric, cutloop, depletion.
const std::vector<std::string>& model_names();
bool is_model_name(const std::string& name);

/// Runs one model on a pair (padding it first where the model needs m == n).
/// Cap violations give Skipped, other exceptions Error; neither escapes.
ModelResult run_model(const std::string& name, const InstancePair& pair, const RunOptions& options = {});

/// Rebuilds the model's system and substitutes the recorded witness. True when the model
/// has no witness to check.
bool substitute_witness(const InstancePair& pair, const ModelResult& result, const RunOptions& options = {});

ordered_json model_result_to_json(const ModelResult& r);

}  // namespace bvlab
