#pragma once

#include <vector>

#include "heavytail/rng.hpp"

namespace heavytail {

/// Generalized harmonic number: sum_{j=1..m} j^(-beta).
/// Rejects m == 0 and beta <= 0.
double harmonic(uint64_t m, double beta);

/// Discrete power-law distribution P[k] = k^(-beta) / H over {1..support_max},
/// with H the generalized harmonic number of the support. Tables are built
/// once and are a deterministic function of (support_max, beta); sampling is
/// an inverse-CDF binary search on the cumulative table.
class PowerLawDist {
public:
  PowerLawDist(int support_max, double beta);

  int support_max() const { return support_max_; }
  double beta() const { return beta_; }
  double normalizer() const { return normalizer_; }

  /// P[k] for k in {1..support_max}.
  double probability(int k) const { return probabilities_[static_cast<size_t>(k - 1)]; }

  const std::vector<double>& probabilities() const { return probabilities_; }
  const std::vector<double>& cumulative() const { return cumulative_; }

  /// Draws k in {1..support_max}.
  int sample(SplitMix64& rng) const;

private:
  int support_max_;
  double beta_;
  double normalizer_;
  std::vector<double> probabilities_;
  std::vector<double> cumulative_;
};

}  // namespace heavytail
