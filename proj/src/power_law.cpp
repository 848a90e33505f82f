#include "heavytail/power_law.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heavytail {

double harmonic(uint64_t m, double beta) {
  if (m == 0) throw std::invalid_argument("harmonic: m must be >= 1");
  if (beta <= 0.0) throw std::invalid_argument("harmonic: beta must be > 0");
  // Summed smallest-first so the tiny tail terms are not absorbed into a
  // large running total.
  double sum = 0.0;
  for (uint64_t j = m; j >= 1; --j) sum += std::pow(static_cast<double>(j), -beta);
  return sum;
}

PowerLawDist::PowerLawDist(int support_max, double beta)
    : support_max_(support_max), beta_(beta) {
  if (support_max < 1) throw std::invalid_argument("PowerLawDist: support_max must be >= 1");
  if (beta <= 0.0) throw std::invalid_argument("PowerLawDist: beta must be > 0");
  normalizer_ = harmonic(static_cast<uint64_t>(support_max), beta);
  probabilities_.resize(static_cast<size_t>(support_max));
  cumulative_.resize(static_cast<size_t>(support_max));
  double acc = 0.0;
  for (int k = 1; k <= support_max; ++k) {
    const double p = std::pow(static_cast<double>(k), -beta) / normalizer_;
    probabilities_[static_cast<size_t>(k - 1)] = p;
    acc += p;
    cumulative_[static_cast<size_t>(k - 1)] = acc;
  }
}

int PowerLawDist::sample(SplitMix64& rng) const {
  const double u = rng.uniform01();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;  // u beyond the last entry by rounding
  return static_cast<int>(it - cumulative_.begin()) + 1;
}

}  // namespace heavytail
