#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "heavytail/stats.hpp"

namespace heavytail {

/// Declarative batch of (instance x operator x seed) trials. Parsed from a
/// line-oriented "key = value" file with repeated `instance` and `operator`
/// keys and '#' comments.
struct ExperimentConfig {
  std::vector<std::string> instances;
  std::vector<std::string> operators;
  int repetitions = 100;
  uint64_t budget = 0;
  std::vector<uint64_t> checkpoints;  // defaults to {budget}
  uint64_t master_seed = 0;
  std::string output_path;
  double max_wall_seconds = 0;  // per (instance, operator) pair; 0 = unlimited
  int threads = 0;              // 0 = library default

  static ExperimentConfig parse(std::istream& in);
  static ExperimentConfig load(const std::string& path);

  /// Checks counts, checkpoint bounds, and that every operator spec parses.
  void validate() const;
};

struct ExperimentOutcome {
  ResultTable table;
  // (spec, reason) for instances that failed to load.
  std::vector<std::pair<std::string, std::string>> skipped_instances;
  // (instance, operator) pairs that hit the wall-clock cap; their partial
  // rows are excluded from the table.
  std::vector<std::pair<std::string, std::string>> incomplete_pairs;
};

/// Deterministic per-trial seed from the experiment coordinates.
uint64_t derive_trial_seed(uint64_t master_seed, int instance_idx, int operator_idx, int run_id);

/// Runs every trial (in parallel), recording the best fitness at each
/// checkpoint. Rows are ordered by (instance, operator, run) regardless of
/// completion order; the fitness columns are a pure function of the config.
/// When output_path is set the CSV is appended instance by instance as
/// results complete. Instance load failures skip that instance with a note
/// in the outcome (and on `log` when given); other instances proceed.
ExperimentOutcome run_experiment(const ExperimentConfig& config, std::ostream* log = nullptr);

}  // namespace heavytail
