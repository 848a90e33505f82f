#include "heavytail/matroid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace heavytail {

int Matroid::rank(const BitString& S) const {
  const int n = ground_size();
  BitString t(n);
  int r = 0;
  for (int v = 0; v < n; ++v) {
    if (!S.test(v)) continue;
    t.set(v, true);
    if (independent(t)) {
      ++r;
    } else {
      t.set(v, false);
    }
  }
  return r;
}

UniformMatroid::UniformMatroid(int n, int k) : n_(n), k_(k) {
  if (n < 1 || k < 0) throw std::invalid_argument("UniformMatroid: need n >= 1, k >= 0");
}

PartitionMatroid::PartitionMatroid(int n, std::vector<int32_t> block_of,
                                   std::vector<int32_t> capacities)
    : n_(n), block_of_(std::move(block_of)), capacities_(std::move(capacities)) {
  if (static_cast<int>(block_of_.size()) != n)
    throw std::invalid_argument("PartitionMatroid: block assignment size mismatch");
  for (int32_t b : block_of_)
    if (b != -1 && (b < 0 || b >= static_cast<int32_t>(capacities_.size())))
      throw std::invalid_argument("PartitionMatroid: block id out of range");
  for (int32_t c : capacities_)
    if (c < 0) throw std::invalid_argument("PartitionMatroid: negative capacity");
}

bool PartitionMatroid::independent(const BitString& s) const {
  std::vector<int32_t> used(capacities_.size(), 0);
  for (int v = 0; v < n_; ++v) {
    if (!s.test(v)) continue;
    const int32_t b = block_of_[static_cast<size_t>(v)];
    if (b >= 0 && ++used[static_cast<size_t>(b)] > capacities_[static_cast<size_t>(b)])
      return false;
  }
  return true;
}

int PartitionMatroid::rank(const BitString& S) const {
  std::vector<int32_t> used(capacities_.size(), 0);
  int r = 0;
  for (int v = 0; v < n_; ++v) {
    if (!S.test(v)) continue;
    const int32_t b = block_of_[static_cast<size_t>(v)];
    if (b < 0) {
      ++r;  // unconstrained element
    } else if (used[static_cast<size_t>(b)] < capacities_[static_cast<size_t>(b)]) {
      ++used[static_cast<size_t>(b)];
      ++r;
    }
  }
  return r;
}

ExplicitMatroid::ExplicitMatroid(int n, const std::vector<uint32_t>& independent_masks)
    : n_(n), masks_(independent_masks.begin(), independent_masks.end()) {
  if (n < 1 || n > 24) throw std::invalid_argument("ExplicitMatroid: n must be in [1,24]");
}

bool ExplicitMatroid::independent(const BitString& s) const {
  return masks_.count(static_cast<uint32_t>(s.low_mask())) > 0;
}

bool ExplicitMatroid::verify_axioms(std::string* why) const {
  const auto explain = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (masks_.count(0) == 0) return explain("empty set not independent");
  for (uint32_t m : masks_) {
    // Downward closure: dropping any single element stays independent.
    for (uint32_t bits = m; bits != 0; bits &= bits - 1) {
      const uint32_t sub = m & ~(bits & (0 - bits));
      if (masks_.count(sub) == 0) return explain("not downward closed");
    }
  }
  for (uint32_t s : masks_) {
    for (uint32_t t : masks_) {
      if (std::popcount(s) >= std::popcount(t)) continue;
      bool extends = false;
      for (uint32_t bits = t & ~s; bits != 0 && !extends; bits &= bits - 1) {
        const uint32_t x = bits & (0 - bits);
        extends = masks_.count(s | x) > 0;
      }
      if (!extends) return explain("exchange axiom fails");
    }
  }
  return true;
}

PartitionMatroid parse_partition_blocks(int n, std::istream& input) {
  std::vector<int32_t> block_of(static_cast<size_t>(n), -1);
  std::vector<int32_t> capacities;
  std::string line;
  int64_t line_no = 0;
  while (std::getline(input, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    if (first[0] == '#' || first[0] == '%') continue;
    const auto fail = [&](const std::string& why) {
      throw std::invalid_argument("partition blocks line " + std::to_string(line_no) + ": " + why);
    };
    int64_t block_id = 0, capacity = 0;
    try {
      block_id = std::stoll(first);
    } catch (...) {
      fail("malformed block id");
    }
    if (!(ss >> capacity)) fail("missing capacity");
    if (block_id < 0 || capacity < 0) fail("negative block id or capacity");
    if (block_id >= static_cast<int64_t>(capacities.size()))
      capacities.resize(static_cast<size_t>(block_id) + 1, 0);
    capacities[static_cast<size_t>(block_id)] = static_cast<int32_t>(capacity);
    int64_t member = 0;
    while (ss >> member) {
      if (member < 0 || member >= n) fail("member out of range");
      if (block_of[static_cast<size_t>(member)] != -1) fail("element assigned twice");
      block_of[static_cast<size_t>(member)] = static_cast<int32_t>(block_id);
    }
    if (!ss.eof()) fail("malformed member list");
  }
  return PartitionMatroid(n, std::move(block_of), std::move(capacities));
}

PartitionMatroid load_partition_blocks(int n, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open partition block file '" + path + "'");
  return parse_partition_blocks(n, in);
}

ConstrainedFitness::ConstrainedFitness(std::shared_ptr<const SetFunction> f,
                                       std::shared_ptr<const Matroid> m)
    : f_(std::move(f)), m_(std::move(m)) {
  if (f_->ground_size() != m_->ground_size())
    throw std::invalid_argument("ConstrainedFitness: ground size mismatch");
  uniform_ = dynamic_cast<const UniformMatroid*>(m_.get());
}

double ConstrainedFitness::value(const BitString& s) const {
  if (m_->independent(s)) return f_->value(s);
  return static_cast<double>(m_->rank(s) - s.popcount());
}

double ConstrainedFitness::value_flipped(const BitString& s, std::span<const int32_t> flips,
                                         double current) const {
  const bool was_feasible = current >= 0.0;
  if (uniform_) {
    int pop = s.popcount();
    for (int32_t p : flips) pop += s.test(p) ? -1 : 1;
    const int k = uniform_->capacity();
    if (pop > k) return static_cast<double>(k - pop);
    if (was_feasible) return f_->value_flipped(s, flips, current);
    BitString t = s;
    for (int32_t p : flips) t.flip(p);
    return f_->value(t);
  }
  BitString t = s;
  for (int32_t p : flips) t.flip(p);
  if (!m_->independent(t)) return static_cast<double>(m_->rank(t) - t.popcount());
  if (was_feasible) return f_->value_flipped(s, flips, current);
  return f_->value(t);
}

bool is_local_optimum_constrained(const SetFunction& f, const Matroid& m, const BitString& S,
                                  double alpha) {
  if (!(alpha > 0)) throw std::invalid_argument("is_local_optimum_constrained: alpha must be > 0");
  if (!m.independent(S)) throw std::invalid_argument("is_local_optimum_constrained: S dependent");
  const int n = f.ground_size();
  const double bar = (1.0 + alpha) * f.value(S);
  BitString t = S;
  for (int u = 0; u < n; ++u) {
    if (!S.test(u)) continue;
    t.set(u, false);
    const double removed = f.value(t);
    t.set(u, true);
    if (bar < removed) return false;
  }
  for (int v = 0; v < n; ++v) {
    if (S.test(v)) continue;
    t.set(v, true);
    if (m.independent(t) && bar < f.value(t)) {
      t.set(v, false);
      return false;
    }
    t.set(v, false);
  }
  for (int u = 0; u < n; ++u) {
    if (!S.test(u)) continue;
    t.set(u, false);
    for (int v = 0; v < n; ++v) {
      if (S.test(v)) continue;
      t.set(v, true);
      if (m.independent(t) && bar < f.value(t)) {
        t.set(v, false);
        t.set(u, true);
        return false;
      }
      t.set(v, false);
    }
    t.set(u, true);
  }
  return true;
}

BitString local_search_matroid(const SetFunction& f, const Matroid& m, double epsilon,
                               const BitString& start) {
  if (!(epsilon > 0)) throw std::invalid_argument("local_search_matroid: epsilon must be > 0");
  if (!m.independent(start)) throw std::invalid_argument("local_search_matroid: start dependent");
  const int n = f.ground_size();
  const double factor = 1.0 + epsilon / (static_cast<double>(n) * n);
  const uint64_t move_bound = static_cast<uint64_t>(
      std::ceil(10.0 * (static_cast<double>(n) * n / epsilon) * std::log(n / epsilon + 2.0)));

  BitString S = start;
  double fs = f.value(S);
  uint64_t moves = 0;
  for (;;) {
    const double bar = fs == 0.0 ? 0.0 : factor * fs;
    const auto qualifies = [&](double cand) { return fs == 0.0 ? cand > 0.0 : cand >= bar; };

    bool moved = false;
    BitString t = S;
    for (int u = 0; u < n && !moved; ++u) {  // deletions
      if (!S.test(u)) continue;
      t.set(u, false);
      const double cand = f.value(t);
      if (qualifies(cand)) {
        S = t;
        fs = cand;
        moved = true;
      } else {
        t.set(u, true);
      }
    }
    for (int v = 0; v < n && !moved; ++v) {  // insertions
      if (S.test(v)) continue;
      t.set(v, true);
      if (m.independent(t)) {
        const double cand = f.value(t);
        if (qualifies(cand)) {
          S = t;
          fs = cand;
          moved = true;
          break;
        }
      }
      t.set(v, false);
    }
    for (int u = 0; u < n && !moved; ++u) {  // swaps
      if (!S.test(u)) continue;
      t.set(u, false);
      for (int v = 0; v < n; ++v) {
        if (S.test(v)) continue;
        t.set(v, true);
        if (m.independent(t)) {
          const double cand = f.value(t);
          if (qualifies(cand)) {
            S = t;
            fs = cand;
            moved = true;
            break;
          }
        }
        t.set(v, false);
      }
      if (!moved) t.set(u, true);
    }
    if (!moved) break;
    if (++moves > move_bound)
      throw std::runtime_error("local_search_matroid: exceeded move safety bound");
  }
  return S;
}

namespace {

bool exchange_dfs(const Matroid& m, const BitString& I, const std::vector<int>& sources,
                  const std::vector<int>& targets, size_t si, std::vector<bool>& used) {
  if (si == sources.size()) return true;
  const int b = sources[si];
  // pi(b) = none: I + b must be independent.
  {
    BitString t = I;
    t.set(b, true);
    if (m.independent(t) && exchange_dfs(m, I, sources, targets, si + 1, used)) return true;
  }
  for (size_t ti = 0; ti < targets.size(); ++ti) {
    if (used[ti]) continue;
    BitString t = I;
    t.set(targets[ti], false);
    t.set(b, true);
    if (!m.independent(t)) continue;
    used[ti] = true;
    if (exchange_dfs(m, I, sources, targets, si + 1, used)) return true;
    used[ti] = false;
  }
  return false;
}

}  // namespace

bool verify_exchange_mapping(const Matroid& m, const BitString& I, const BitString& J) {
  if (!m.independent(I) || !m.independent(J))
    throw std::invalid_argument("verify_exchange_mapping: sets must be independent");
  const int n = m.ground_size();
  std::vector<int> sources, targets;
  for (int v = 0; v < n; ++v) {
    if (J.test(v) && !I.test(v)) sources.push_back(v);
    if (I.test(v) && !J.test(v)) targets.push_back(v);
  }
  if (sources.size() > 8)
    throw std::invalid_argument("verify_exchange_mapping: |J \\ I| > 8 (test-scale only)");
  std::vector<bool> used(targets.size(), false);
  return exchange_dfs(m, I, sources, targets, 0, used);
}

}  // namespace heavytail
