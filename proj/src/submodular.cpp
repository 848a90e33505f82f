#include "heavytail/submodular.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace heavytail {

namespace {

BitString from_mask_n(int n, uint64_t mask) { return BitString::from_mask(n, mask); }

}  // namespace

std::pair<BitString, double> brute_force_max_serial(const SetFunction& f,
                                                    const FeasibilityOracle* constraint) {
  const int n = f.ground_size();
  if (n > 24) throw std::invalid_argument("brute_force_max: n > 24");
  const uint64_t total = uint64_t{1} << n;
  bool found = false;
  uint64_t best_mask = 0;
  double best = 0.0;
  for (uint64_t mask = 0; mask < total; ++mask) {
    const BitString s = from_mask_n(n, mask);
    if (constraint && *constraint && !(*constraint)(s)) continue;
    const double v = f.value(s);
    if (!found || v > best) {
      found = true;
      best = v;
      best_mask = mask;
    }
  }
  if (!found) throw std::invalid_argument("brute_force_max: no feasible subset");
  return {from_mask_n(n, best_mask), best};
}

std::pair<BitString, double> brute_force_max(const SetFunction& f,
                                             const FeasibilityOracle* constraint) {
  const int n = f.ground_size();
  if (n > 24) throw std::invalid_argument("brute_force_max: n > 24");
  const int64_t total = int64_t{1} << n;

  bool any_found = false;
  uint64_t best_mask = 0;
  double best = 0.0;
#pragma omp parallel
  {
    bool local_found = false;
    uint64_t local_mask = 0;
    double local_best = 0.0;
#pragma omp for schedule(static) nowait
    for (int64_t mask = 0; mask < total; ++mask) {
      const BitString s = from_mask_n(n, static_cast<uint64_t>(mask));
      if (constraint && *constraint && !(*constraint)(s)) continue;
      const double v = f.value(s);
      if (!local_found || v > local_best ||
          (v == local_best && static_cast<uint64_t>(mask) < local_mask)) {
        local_found = true;
        local_best = v;
        local_mask = static_cast<uint64_t>(mask);
      }
    }
#pragma omp critical
    {
      if (local_found &&
          (!any_found || local_best > best || (local_best == best && local_mask < best_mask))) {
        any_found = true;
        best = local_best;
        best_mask = local_mask;
      }
    }
  }
  if (!any_found) throw std::invalid_argument("brute_force_max: no feasible subset");
  return {from_mask_n(n, best_mask), best};
}

bool is_submodular(const SetFunction& f, double tol) {
  const int n = f.ground_size();
  if (n > 12) throw std::invalid_argument("is_submodular: n > 12");
  const uint32_t total = uint32_t{1} << n;

  std::vector<double> val(total);
#pragma omp parallel for schedule(static)
  for (int64_t mask = 0; mask < total; ++mask)
    val[static_cast<size_t>(mask)] = f.value(from_mask_n(n, static_cast<uint64_t>(mask)));

  bool ok = true;
#pragma omp parallel for schedule(static) reduction(&& : ok)
  for (int64_t s = 0; s < total; ++s) {
    bool local_ok = true;
    for (uint32_t t = static_cast<uint32_t>(s); t < total; ++t) {
      const uint32_t u = static_cast<uint32_t>(s) | t;
      const uint32_t i = static_cast<uint32_t>(s) & t;
      if (val[static_cast<size_t>(s)] + val[t] < val[u] + val[i] - tol) {
        local_ok = false;
        break;
      }
    }
    ok = ok && local_ok;
  }
  if (!ok) return false;

  // Cross-check via diminishing marginals: for S subset of T and x outside T,
  // f(S+x) - f(S) >= f(T+x) - f(T). Subsets of T are enumerated by the
  // standard submask walk.
  for (uint32_t t = 0; t < total; ++t) {
    for (uint32_t s = t;; s = (s - 1) & t) {
      for (int x = 0; x < n; ++x) {
        const uint32_t bit = uint32_t{1} << x;
        if (t & bit) continue;
        if (val[s | bit] - val[s] < val[t | bit] - val[t] - tol) return false;
      }
      if (s == 0) break;
    }
  }
  return true;
}

bool is_local_optimum(const SetFunction& f, const BitString& S, double alpha) {
  if (!(alpha > 0)) throw std::invalid_argument("is_local_optimum: alpha must be > 0");
  const int n = f.ground_size();
  const double bar = (1.0 + alpha) * f.value(S);
  BitString t = S;
  for (int v = 0; v < n; ++v) {
    t.flip(v);
    const double moved = f.value(t);
    t.flip(v);
    if (bar < moved) return false;
  }
  return true;
}

BitString local_search_unconstrained(const SetFunction& f, double epsilon,
                                     const BitString& start) {
  if (!(epsilon > 0)) throw std::invalid_argument("local_search: epsilon must be > 0");
  const int n = f.ground_size();
  if (start.size() != n) throw std::invalid_argument("local_search: start length mismatch");
  const double factor = 1.0 + epsilon / (static_cast<double>(n) * n);
  const uint64_t move_bound = static_cast<uint64_t>(
      std::ceil(10.0 * (static_cast<double>(n) * n / epsilon) * std::log(n / epsilon + 2.0)));

  BitString S = start;
  double fs = f.value(S);
  uint64_t moves = 0;
  for (;;) {
    // Accept iff the new value beats (1 + eps/n^2) f(S); from value zero, any
    // strictly positive move qualifies.
    const double bar = fs == 0.0 ? 0.0 : factor * fs;
    int move = -1;
    double moved_value = 0.0;
    for (int pass = 0; pass < 2 && move < 0; ++pass) {
      const bool removals = pass == 0;
      for (int v = 0; v < n; ++v) {
        if (S.test(v) != removals) continue;
        S.flip(v);
        const double cand = f.value(S);
        S.flip(v);
        if (fs == 0.0 ? cand > 0.0 : cand >= bar) {
          move = v;
          moved_value = cand;
          break;
        }
      }
    }
    if (move < 0) break;
    S.flip(move);
    fs = moved_value;
    if (++moves > move_bound)
      throw std::runtime_error("local_search_unconstrained: exceeded move safety bound");
  }

  const BitString comp = complement_of(S);
  return f.value(comp) > fs ? comp : S;
}

double random_subset_mean(const SetFunction& f) {
  const int n = f.ground_size();
  if (n > 20) throw std::invalid_argument("random_subset_mean: n > 20");
  const uint64_t total = uint64_t{1} << n;
  // Serial on purpose: this is a test oracle, and a fixed summation order
  // keeps it bit-reproducible regardless of thread count.
  double sum = 0.0;
  for (uint64_t mask = 0; mask < total; ++mask) sum += f.value(from_mask_n(n, mask));
  return sum / static_cast<double>(total);
}

}  // namespace heavytail
