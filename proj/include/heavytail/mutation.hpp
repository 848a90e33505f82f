#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "heavytail/bitstring.hpp"
#include "heavytail/power_law.hpp"
#include "heavytail/rng.hpp"

namespace heavytail {

enum class MutationKind { pmut, fmut, unif, unif1, cmut };

/// Per-trial mutable state: the random stream plus scratch buffers for
/// sampling flip positions. Operators themselves are immutable and shared;
/// each concurrent trial owns one context.
struct MutationContext {
  MutationContext(uint64_t seed, int n);

  SplitMix64 rng;
  std::vector<int32_t> perm;          // identity permutation, restored after each draw
  std::vector<int32_t> swap_targets;  // Fisher-Yates swap partners, for the undo pass
  std::vector<int32_t> flips;         // positions flipped by the last mutation
};

/// Flips exactly k distinct positions chosen uniformly among all C(n,k)
/// possibilities, via a partial Fisher-Yates pass over ctx.perm (O(k) per
/// call; the permutation is swapped back afterwards). Flipped positions are
/// appended to ctx.flips.
void flip_exact_count(BitString& x, int k, MutationContext& ctx);

/// Flips each bit independently with probability q, using geometric gap
/// sampling so the cost is proportional to the number of flips, not n.
void flip_each_with_prob(BitString& x, double q, MutationContext& ctx);

/// A mutation operator bound to a fixed string length n. Heavy-tailed
/// variants precompute their power-law tables at construction. Immutable
/// after construction and safe to share across threads.
class MutationOperator {
public:
  /// Draws the flip count k from k^(-beta)/H_n over {1..n} and flips exactly
  /// k distinct bits. Never returns its input unchanged.
  static MutationOperator pmut(int n, double beta);

  /// Draws a rate index a from a power law over {1..floor(n/2)} and flips
  /// each bit independently with probability a/n. May flip nothing.
  static MutationOperator fmut(int n, double beta);

  /// Flips each bit independently with probability p/n. With at_least_one
  /// set, all-zero draws are rejected and resampled, preserving the
  /// conditional distribution.
  static MutationOperator unif(int n, double p, bool at_least_one = false);

  /// With probability p flips one uniformly chosen bit; otherwise draws k
  /// uniformly from {2..n} and flips exactly k distinct bits.
  static MutationOperator cmut(int n, double p);

  /// Parses "pmut:1.5", "fmut:2.5", "unif:1", "unif1", "cmut:0.5".
  static MutationOperator parse(const std::string& spec, int n);

  MutationKind kind() const { return kind_; }
  int n() const { return n_; }
  double parameter() const { return param_; }
  const std::string& spec() const { return spec_; }

  /// Mutates x in place; returns the flipped positions (valid until the next
  /// call with the same context).
  std::span<const int32_t> mutate(BitString& x, MutationContext& ctx) const;

  /// Copying convenience for tests and sampling tools.
  BitString apply(const BitString& x, MutationContext& ctx) const;

private:
  MutationOperator(MutationKind kind, int n, double param, std::string spec);

  MutationKind kind_;
  int n_;
  double param_;
  std::string spec_;
  std::shared_ptr<const PowerLawDist> dist_;  // pmut/fmut only
};

}  // namespace heavytail
