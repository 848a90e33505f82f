#pragma once

#include <span>

#include "heavytail/bitstring.hpp"

namespace heavytail {

/// A function from subsets of a ground set {0..n-1} to reals, the shared
/// fitness abstraction for the search loop and the set-optimization helpers.
/// Instances are immutable after construction and reentrant.
class SetFunction {
public:
  virtual ~SetFunction() = default;

  virtual int ground_size() const = 0;

  virtual double value(const BitString& s) const = 0;

  /// Integer-valued functions use exact target comparisons in the search
  /// loop; real-valued ones get a small absolute tolerance.
  virtual bool integral() const { return false; }

  /// True when value_flipped is cheaper than a full evaluation.
  virtual bool has_delta() const { return false; }

  /// Value of s with the given positions toggled; `current` must equal
  /// value(s). The default recomputes from scratch.
  virtual double value_flipped(const BitString& s, std::span<const int32_t> flips,
                               double current) const {
    (void)current;
    BitString t = s;
    for (int32_t p : flips) t.flip(p);
    return value(t);
  }
};

}  // namespace heavytail
