#include "heavytail/ea.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace heavytail {

double RunRecord::best_at(uint64_t c) const {
  // improvements is sorted by evaluation index; find the last entry <= c.
  auto it = std::upper_bound(improvements.begin(), improvements.end(), c,
                             [](uint64_t v, const auto& e) { return v < e.first; });
  if (it == improvements.begin()) throw std::invalid_argument("best_at: before first evaluation");
  return std::prev(it)->second;
}

RunRecord run_opo_ea(const SetFunction& fitness, const MutationOperator& op,
                     const StopCondition& stop, uint64_t seed, const BitString* init,
                     const StepObserver* observer) {
  stop.validate();
  const int n = fitness.ground_size();
  if (op.n() != n) throw std::invalid_argument("run_opo_ea: operator/fitness length mismatch");
  if (init && init->size() != n)
    throw std::invalid_argument("run_opo_ea: init/fitness length mismatch");

  const double target_tol = fitness.integral() ? 0.0 : 1e-9;
  const auto target_met = [&](double f) {
    return stop.target_fitness && f >= *stop.target_fitness - target_tol;
  };

  MutationContext ctx(seed, n);
  BitString x = init ? *init : random_bitstring(n, ctx.rng);
  BitString y = x;  // mirror of x, kept in sync with O(flips) work per iteration

  RunRecord rec;
  rec.seed = seed;
  double fx = fitness.value(x);
  uint64_t evals = 1;
  rec.improvements.emplace_back(evals, fx);
  if (observer) (*observer)(evals, fx);

  const bool use_delta = fitness.has_delta();
  while (!target_met(fx) && (stop.max_evaluations == 0 || evals < stop.max_evaluations)) {
    const auto flips = op.mutate(y, ctx);
    const double fy = use_delta ? fitness.value_flipped(x, flips, fx) : fitness.value(y);
    ++evals;
#ifndef NDEBUG
    if (use_delta) {
      const double full = fitness.value(y);
      assert(std::abs(fy - full) <= 1e-9 * std::max(1.0, std::abs(full)));
    }
#endif
    if (fy >= fx) {
      std::swap(x, y);
      for (int32_t p : flips) y.flip(p);  // resync the mirror
      if (fy > fx) rec.improvements.emplace_back(evals, fy);
      fx = fy;
    } else {
      for (int32_t p : flips) y.flip(p);  // undo the rejected mutation
    }
    if (observer) (*observer)(evals, fx);
  }

  rec.final_solution = std::move(x);
  rec.final_fitness = fx;
  rec.evaluations_used = evals;
  return rec;
}

}  // namespace heavytail
