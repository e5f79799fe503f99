#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "bvlab/harness.hpp"

namespace bvlab {

struct ModelStats {
  std::string model;
  std::size_t total = 0, yes = 0, no = 0, inconclusive = 0, skipped = 0, error = 0;
  std::size_t compared = 0;  ///< decided, with an oracle verdict
  std::size_t agree = 0, false_yes = 0, false_no = 0;
};

/// One row per (model, oracle verdict).
struct OracleSplit {
  std::string model;
  std::string oracle;  ///< YES, NO or "-" when the oracle did not run
  std::size_t instances = 0, model_yes = 0, model_no = 0, undecided = 0;
};

struct AlphaRow {
  std::size_t n = 0;
  std::map<std::size_t, std::size_t> histogram;
  std::size_t bound = 0;  ///< (n-1)^2 + 1
  std::size_t max_alpha = 0;
};

struct DepletionStats {
  std::size_t runs = 0, emptied = 0, emptied_oracle_yes = 0, survived = 0, vacuous = 0, oracle_no = 0;
};

struct CutLoopStats {
  std::size_t runs = 0, yes = 0, no = 0, inconclusive = 0, stalled = 0, max_iterations = 0;
  std::size_t total_iterations = 0;
  std::map<std::size_t, std::size_t> iterations;
};

struct Report {
  std::size_t records = 0;
  std::size_t malformed = 0;
  std::vector<ModelStats> models;  ///< in order of first appearance
  std::vector<OracleSplit> splits;
  std::vector<AlphaRow> alpha;
  DepletionStats depletion;
  CutLoopStats cutloop;
};

Report summarize(const std::vector<VerdictRecord>& records);
/// Reads a records JSONL file; lines that do not parse as records are counted, not fatal.
Report report_file(const std::string& path);

std::string render_text(const Report& r);
/// model,oracle,instances,model_yes,model_no,undecided followed by a blank line and the per-model table.
std::string render_csv(const Report& r);

}  // namespace bvlab
