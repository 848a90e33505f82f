#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "heavytail/mutation.hpp"
#include "heavytail/set_function.hpp"

namespace heavytail {

struct StopCondition {
  uint64_t max_evaluations = 0;
  std::optional<double> target_fitness;

  void validate() const {
    if (max_evaluations == 0 && !target_fitness)
      throw std::invalid_argument("StopCondition: no bound set");
  }
};

/// Trajectory of one elitist single-parent run. `improvements` holds the
/// initial evaluation followed by every strict improvement, as
/// (evaluation index, fitness) pairs with index 1 = the initial evaluation.
struct RunRecord {
  std::vector<std::pair<uint64_t, double>> improvements;
  BitString final_solution;
  double final_fitness = 0.0;
  uint64_t evaluations_used = 0;
  uint64_t seed = 0;

  /// Best fitness seen up to and including evaluation index `c` (c >= 1).
  double best_at(uint64_t c) const;
};

/// Called once per completed iteration with the evaluation index and the
/// current (post-selection) parent fitness. Test hook; keep it cheap.
using StepObserver = std::function<void(uint64_t eval_index, double parent_fitness)>;

/// Single-parent elitist search: start uniformly at random (or from `init`),
/// mutate, and replace the parent whenever the offspring is at least as fit.
/// Exactly one fitness evaluation per iteration plus one for initialization.
/// Deterministic function of (fitness, operator, stop, seed, init).
RunRecord run_opo_ea(const SetFunction& fitness, const MutationOperator& op,
                     const StopCondition& stop, uint64_t seed,
                     const BitString* init = nullptr,
                     const StepObserver* observer = nullptr);

}  // namespace heavytail
