#pragma once

#include <stdexcept>

#include "heavytail/set_function.hpp"

namespace heavytail {

inline int onemax(const BitString& x) { return x.popcount(); }

struct JumpParams {
  int m;
  int n;

  JumpParams(int m_, int n_) : m(m_), n(n_) {
    if (!(1 < m && m < n)) throw std::invalid_argument("jump requires 1 < m < n");
  }
};

/// Unitation landscape with a fitness valley of width m just below the
/// all-ones optimum: m + |x| for |x| <= n-m or |x| = n, and n - |x| inside
/// the gap.
inline int jump(const JumpParams& p, const BitString& x) {
  if (x.size() != p.n) throw std::invalid_argument("jump: bitstring length mismatch");
  const int ones = x.popcount();
  if (ones <= p.n - p.m) return p.m + ones;
  if (ones == p.n) return p.m + ones;
  return p.n - ones;
}

class OneMax final : public SetFunction {
public:
  explicit OneMax(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("OneMax: n must be >= 1");
  }

  int ground_size() const override { return n_; }
  double value(const BitString& s) const override { return onemax(s); }
  bool integral() const override { return true; }
  bool has_delta() const override { return true; }

  double value_flipped(const BitString& s, std::span<const int32_t> flips,
                       double current) const override {
    int d = 0;
    for (int32_t p : flips) d += s.test(p) ? -1 : 1;
    return current + d;
  }

private:
  int n_;
};

class Jump final : public SetFunction {
public:
  explicit Jump(JumpParams params) : params_(params) {}

  int ground_size() const override { return params_.n; }
  double value(const BitString& s) const override { return jump(params_, s); }
  bool integral() const override { return true; }

  const JumpParams& params() const { return params_; }

private:
  JumpParams params_;
};

}  // namespace heavytail
