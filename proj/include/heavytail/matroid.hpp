#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <unordered_set>
#include <vector>

#include "heavytail/set_function.hpp"

namespace heavytail {

/// Independence-system oracle with the exchange property; rank defaults to
/// the greedy scan, which the exchange axiom makes order-independent.
class Matroid {
public:
  virtual ~Matroid() = default;

  virtual int ground_size() const = 0;
  virtual bool independent(const BitString& s) const = 0;

  /// Size of the largest independent subset of S.
  virtual int rank(const BitString& S) const;

  virtual std::string describe() const = 0;
};

class UniformMatroid final : public Matroid {
public:
  UniformMatroid(int n, int k);

  int ground_size() const override { return n_; }
  bool independent(const BitString& s) const override { return s.popcount() <= k_; }
  int rank(const BitString& S) const override { return std::min(S.popcount(), k_); }
  std::string describe() const override { return "uniform:" + std::to_string(k_); }

  int capacity() const { return k_; }

private:
  int n_, k_;
};

class PartitionMatroid final : public Matroid {
public:
  /// block_of[i] is the block of element i, or -1 for unconstrained elements;
  /// capacities[b] bounds the number of chosen elements in block b.
  PartitionMatroid(int n, std::vector<int32_t> block_of, std::vector<int32_t> capacities);

  int ground_size() const override { return n_; }
  bool independent(const BitString& s) const override;
  int rank(const BitString& S) const override;
  std::string describe() const override { return "partition"; }

private:
  int n_;
  std::vector<int32_t> block_of_;
  std::vector<int32_t> capacities_;
};

/// Test-scale matroid given by an explicit list of independent sets (masks
/// over n <= 24 elements). verify_axioms checks the empty set, downward
/// closure, and the exchange property exhaustively.
class ExplicitMatroid final : public Matroid {
public:
  ExplicitMatroid(int n, const std::vector<uint32_t>& independent_masks);

  int ground_size() const override { return n_; }
  bool independent(const BitString& s) const override;
  std::string describe() const override { return "explicit"; }

  bool verify_axioms(std::string* why = nullptr) const;

private:
  int n_;
  std::unordered_set<uint32_t> masks_;
};

/// Parses "block_id capacity member..." lines ('#'/'%' comments allowed) into
/// a partition matroid over ground size n.
PartitionMatroid parse_partition_blocks(int n, std::istream& input);
PartitionMatroid load_partition_blocks(int n, const std::string& path);

/// Constraint-folding fitness: f(C) on independent sets, rank(C) - |C| on
/// dependent ones. Non-negative exactly on the feasible region (for
/// non-negative f), so an elitist trajectory never leaves it once entered.
class ConstrainedFitness final : public SetFunction {
public:
  ConstrainedFitness(std::shared_ptr<const SetFunction> f, std::shared_ptr<const Matroid> m);

  int ground_size() const override { return f_->ground_size(); }
  double value(const BitString& s) const override;
  bool integral() const override { return f_->integral(); }
  bool has_delta() const override { return true; }
  double value_flipped(const BitString& s, std::span<const int32_t> flips,
                       double current) const override;

  const SetFunction& objective() const { return *f_; }
  const Matroid& matroid() const { return *m_; }

private:
  std::shared_ptr<const SetFunction> f_;
  std::shared_ptr<const Matroid> m_;
  const UniformMatroid* uniform_;  // fast path when the constraint is a cardinality bound
};

/// Swap-aware local optimality: no single deletion, feasible insertion, or
/// feasible swap beats (1+alpha) f(S). S must be independent.
bool is_local_optimum_constrained(const SetFunction& f, const Matroid& m, const BitString& S,
                                  double alpha);

/// Local search over delete/insert/swap moves with the (1 + epsilon/n^2)
/// improvement threshold; returns the resulting local optimum. The start
/// must be independent.
BitString local_search_matroid(const SetFunction& f, const Matroid& m, double epsilon,
                               const BitString& start);

/// Searches for a mapping pi : J\I -> (I\J) u {none} such that
/// (I \ {pi(b)}) u {b} is independent for every b in J\I and no element of
/// I\J is used twice. Requires |J\I| <= 8 (exhaustive search).
bool verify_exchange_mapping(const Matroid& m, const BitString& I, const BitString& J);

}  // namespace heavytail
