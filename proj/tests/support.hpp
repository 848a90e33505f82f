#pragma once

// Shared test utilities: a goodness-of-fit oracle, lambda-backed set
// functions, and certified-submodular instance generators.

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "heavytail/rng.hpp"
#include "heavytail/set_function.hpp"

namespace heavytail::testing {

/// Regularized upper incomplete gamma Q(s, x), series + continued fraction.
inline double gamma_q(double s, double x) {
  if (x < 0 || s <= 0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0) return 1.0;
  const double lg = std::lgamma(s);
  if (x < s + 1.0) {
    // P(s,x) by series, Q = 1 - P.
    double term = 1.0 / s;
    double sum = term;
    double a = s;
    for (int i = 0; i < 1000; ++i) {
      a += 1.0;
      term *= x / a;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * 1e-15) break;
    }
    return 1.0 - sum * std::exp(-x + s * std::log(x) - lg);
  }
  // Q(s,x) by Lentz continued fraction.
  double b = x + 1.0 - s;
  double c = 1e300;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-15) break;
  }
  return std::exp(-x + s * std::log(x) - lg) * h;
}

/// P-value of a chi-square statistic with df degrees of freedom.
inline double chi_square_pvalue(double statistic, int df) {
  return gamma_q(df / 2.0, statistic / 2.0);
}

/// Chi-square goodness-of-fit p-value of observed counts against expected
/// probabilities; cells with expected count below `min_expected` are pooled
/// into their left neighbor (Cochran's rule).
inline double chi_square_gof_pvalue(const std::vector<uint64_t>& observed,
                                    const std::vector<double>& probabilities,
                                    double min_expected = 5.0) {
  if (observed.size() != probabilities.size())
    throw std::invalid_argument("chi_square_gof_pvalue: size mismatch");
  uint64_t total = 0;
  for (uint64_t c : observed) total += c;
  std::vector<double> exp_bins, obs_bins;
  for (size_t i = 0; i < observed.size(); ++i) {
    const double e = probabilities[i] * static_cast<double>(total);
    if (!exp_bins.empty() && (e < min_expected || exp_bins.back() < min_expected)) {
      exp_bins.back() += e;
      obs_bins.back() += static_cast<double>(observed[i]);
    } else {
      exp_bins.push_back(e);
      obs_bins.push_back(static_cast<double>(observed[i]));
    }
  }
  double stat = 0.0;
  for (size_t i = 0; i < exp_bins.size(); ++i) {
    const double diff = obs_bins[i] - exp_bins[i];
    stat += diff * diff / exp_bins[i];
  }
  return chi_square_pvalue(stat, static_cast<int>(exp_bins.size()) - 1);
}

class LambdaSetFunction final : public SetFunction {
public:
  LambdaSetFunction(int n, std::function<double(const BitString&)> f, bool is_integral = false)
      : n_(n), f_(std::move(f)), integral_(is_integral) {}

  int ground_size() const override { return n_; }
  double value(const BitString& s) const override { return f_(s); }
  bool integral() const override { return integral_; }

private:
  int n_;
  std::function<double(const BitString&)> f_;
  bool integral_;
};

/// Weighted coverage function: element i covers a random subset of `items`
/// universe points; f(S) = total weight covered. Monotone submodular,
/// non-negative, not symmetric.
class CoverageFunction final : public SetFunction {
public:
  CoverageFunction(int n, int items, double cover_prob, uint64_t seed) : n_(n) {
    SplitMix64 rng(seed);
    covers_.resize(static_cast<size_t>(n));
    weights_.resize(static_cast<size_t>(items));
    for (auto& w : weights_) w = 0.25 + rng.uniform01();
    for (auto& row : covers_) {
      row.assign(static_cast<size_t>(items), false);
      for (int j = 0; j < items; ++j) row[static_cast<size_t>(j)] = rng.bernoulli(cover_prob);
    }
  }

  int ground_size() const override { return n_; }

  double value(const BitString& s) const override {
    double total = 0.0;
    for (size_t j = 0; j < weights_.size(); ++j) {
      for (int i = 0; i < n_; ++i) {
        if (s.test(i) && covers_[static_cast<size_t>(i)][j]) {
          total += weights_[j];
          break;
        }
      }
    }
    return total;
  }

private:
  int n_;
  std::vector<std::vector<bool>> covers_;
  std::vector<double> weights_;
};

}  // namespace heavytail::testing
