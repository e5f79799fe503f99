#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bvlab/json_io.hpp"
#include "bvlab/reductions.hpp"
#include "bvlab/runner.hpp"

namespace bvlab {

/// subgi, gi, clique, hc, hp, matching, perfect-matching, 2sat, 3sat, sat.
const std::vector<std::string>& problem_kinds();

struct ExperimentConfig {
  std::vector<std::string> problems{"subgi"};
  std::size_t n_min = 3;
  std::size_t n_max = 5;
  Rational density_min{1, 5};
  Rational density_max{4, 5};
  std::uint64_t seed_start = 0;
  std::uint64_t seeds = 10;
  std::vector<std::string> models{"relaxation", "convex", "cutloop"};
  RunOptions run;
  /// Output directory; empty means nothing is written.
  std::string output;
  /// Fan instances out over OpenMP threads. Models then run single-threaded.
  bool parallel = true;

  /// Throws std::invalid_argument on unknown names or sizes outside the oracle caps.
  void validate() const;
};

ordered_json config_to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const json& j);

struct GeneratedInstance {
  std::string id;
  std::string problem;
  std::uint64_t seed = 0;
  std::size_t size = 0;
  Rational density;
  InstancePair pair;
  /// Verdict of the problem's own brute-force oracle; empty for subgi and gi.
  std::optional<bool> direct;
  /// The generated graph or formula.
  ordered_json source;
};

/// Deterministic in (problem, seed, size range, density range).
GeneratedInstance generate_instance(const ExperimentConfig& cfg, const std::string& problem, std::uint64_t seed);

struct InstanceSummary {
  std::string id;
  std::string problem;
  std::uint64_t seed = 0;
  std::size_t n = 0, m = 0;
  Rational density;
  std::optional<bool> oracle;  ///< subgi oracle on the constructed pair
  std::optional<bool> direct;
  std::string note;

  /// Empty unless both oracles ran.
  std::optional<bool> reduction_agrees() const;
};

struct VerdictRecord {
  std::string id;
  std::string problem;
  std::uint64_t seed = 0;
  std::size_t n = 0, m = 0;
  Rational density;
  std::string model;
  Verdict verdict = Verdict::Error;
  std::optional<bool> oracle;
  std::string witness_digest;
  std::size_t iterations = 0;
  std::optional<std::size_t> cuts;
  std::optional<std::size_t> alpha;
  std::string note;
  ordered_json details = ordered_json::object();
  /// Wall time; goes to the timing sidecar only.
  double seconds = 0;

  /// Empty when the model did not decide or the oracle did not run.
  std::optional<bool> agrees() const;
};

ordered_json record_to_json(const VerdictRecord& r);
VerdictRecord record_from_json(const json& j);
ordered_json summary_to_json(const InstanceSummary& s);

struct ExperimentResult {
  std::vector<InstanceSummary> instances;  ///< sorted by id
  std::vector<VerdictRecord> records;      ///< sorted by id, then model order
};

std::string witness_digest(const std::vector<Rational>& witness);

/// Builds each instance, runs the oracles and the selected models. Cap violations end up
/// in the records, never as exceptions. Writes records.jsonl, instances.jsonl and
/// timing.jsonl into cfg.output when set.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

void write_experiment(const ExperimentResult& result, const std::string& dir);

enum class Claim { ConvexSufficiency, AsymmetricSufficiency, IncidenceConvexSufficiency };

std::string to_string(Claim c);
Claim claim_from_string(const std::string& s);
/// Models whose YES the claim says is enough.
std::vector<std::string> claim_models(Claim c);

struct BreachCheck {
  bool model_yes = false;
  bool slow_oracle_no = false;
  bool substitution_ok = false;
  ModelResult result;

  bool verified() const { return model_yes && slow_oracle_no && substitution_ok; }
};

/// Runs the model on the pair, then checks a YES against the exhaustive oracle and by
/// substituting the witness back into the model's system.
BreachCheck verify_breach(const InstancePair& pair, const std::string& model, const RunOptions& options);

struct Finding {
  std::string id;
  std::string model;
  std::uint64_t seed = 0;
  std::string problem;
  std::string witness_digest;
  BreachCheck check;
};

struct HuntResult {
  Claim claim = Claim::ConvexSufficiency;
  ExperimentResult experiment;
  std::vector<Finding> findings;  ///< verified breaches, persisted
  /// Model-YES/oracle-NO records that failed re-verification. Never persisted as findings.
  std::vector<std::string> rejected;
  std::string report;
};

/// Runs the claim's models over cfg and persists every verified breach under
/// out_dir/findings/<id>-<model>/ (pair.json, config.json, finding.json), plus
/// records.jsonl, instances.jsonl, findings.jsonl and report.txt in out_dir.
HuntResult hunt_counterexamples(ExperimentConfig cfg, Claim claim, const std::string& out_dir);

}  // namespace bvlab
