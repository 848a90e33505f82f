#pragma once

#include <functional>
#include <memory>
#include <utility>

#include "heavytail/set_function.hpp"

namespace heavytail {

using FeasibilityOracle = std::function<bool(const BitString&)>;

/// Exhaustive maximization over all (feasible) subsets; n <= 24. Ties are
/// broken toward the lexicographically smallest characteristic mask, so the
/// result is deterministic and thread-count independent.
std::pair<BitString, double> brute_force_max(const SetFunction& f,
                                             const FeasibilityOracle* constraint = nullptr);
std::pair<BitString, double> brute_force_max_serial(const SetFunction& f,
                                                    const FeasibilityOracle* constraint = nullptr);

/// Exhaustive check of f(S) + f(T) >= f(S|T) + f(S&T) over all pairs, plus
/// the equivalent diminishing-returns form on marginals; n <= 12.
bool is_submodular(const SetFunction& f, double tol = 1e-9);

/// True iff (1+alpha) f(S) dominates every single-element add and remove.
bool is_local_optimum(const SetFunction& f, const BitString& S, double alpha);

/// Repeats single-element moves that improve the value by a factor of at
/// least (1 + epsilon/n^2) until none exists, then returns the better of the
/// final set and its complement. Move scan: removals before additions,
/// vertices in index order, first qualifying move taken. Throws if the move
/// count exceeds the safety bound (which would indicate a bug, not an input
/// problem).
BitString local_search_unconstrained(const SetFunction& f, double epsilon,
                                     const BitString& start);

/// f shifted by the constant epsilon*opt/n; strictly positive whenever
/// opt > 0, and submodular exactly when f is.
class PotentialFunction final : public SetFunction {
public:
  PotentialFunction(std::shared_ptr<const SetFunction> base, double epsilon, double opt)
      : base_(std::move(base)), shift_(epsilon * opt / base_->ground_size()) {
    if (!(epsilon > 0)) throw std::invalid_argument("PotentialFunction: epsilon must be > 0");
  }

  int ground_size() const override { return base_->ground_size(); }
  double value(const BitString& s) const override { return base_->value(s) + shift_; }
  bool has_delta() const override { return base_->has_delta(); }
  double value_flipped(const BitString& s, std::span<const int32_t> flips,
                       double current) const override {
    return base_->value_flipped(s, flips, current - shift_) + shift_;
  }
  double shift() const { return shift_; }

private:
  std::shared_ptr<const SetFunction> base_;
  double shift_;
};

/// Exact E[f(R)] for R uniform over all subsets, by enumeration; n <= 20.
double random_subset_mean(const SetFunction& f);

}  // namespace heavytail
