#include "heavytail/mutation.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace heavytail {

MutationContext::MutationContext(uint64_t seed, int n) : rng(seed), perm(static_cast<size_t>(n)) {
  std::iota(perm.begin(), perm.end(), 0);
  flips.reserve(64);
}

void flip_exact_count(BitString& x, int k, MutationContext& ctx) {
  const int n = x.size();
  if (k < 0 || k > n) throw std::invalid_argument("flip_exact_count: k out of range");
  auto& perm = ctx.perm;
  ctx.swap_targets.clear();
  for (int i = 0; i < k; ++i) {
    const auto j = static_cast<size_t>(i) + static_cast<size_t>(ctx.rng.below(static_cast<uint64_t>(n - i)));
    std::swap(perm[static_cast<size_t>(i)], perm[j]);
    ctx.swap_targets.push_back(static_cast<int32_t>(j));
    const int32_t pos = perm[static_cast<size_t>(i)];
    x.flip(pos);
    ctx.flips.push_back(pos);
  }
  // Undo the partial shuffle so perm stays the identity for the next draw.
  for (int i = k - 1; i >= 0; --i)
    std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(ctx.swap_targets[static_cast<size_t>(i)])]);
}

void flip_each_with_prob(BitString& x, double q, MutationContext& ctx) {
  const int n = x.size();
  if (q <= 0.0 || q > 1.0) throw std::invalid_argument("flip_each_with_prob: q must be in (0,1]");
  if (q == 1.0) {
    for (int i = 0; i < n; ++i) {
      x.flip(i);
      ctx.flips.push_back(i);
    }
    return;
  }
  const double log1mq = std::log1p(-q);
  int64_t i = -1;
  for (;;) {
    // Geometric gap to the next flipped index.
    const double u = ctx.rng.uniform01();
    i += 1 + static_cast<int64_t>(std::floor(std::log1p(-u) / log1mq));
    if (i >= n) break;
    x.flip(static_cast<int>(i));
    ctx.flips.push_back(static_cast<int32_t>(i));
  }
}

MutationOperator::MutationOperator(MutationKind kind, int n, double param, std::string spec)
    : kind_(kind), n_(n), param_(param), spec_(std::move(spec)) {
  if (n < 1) throw std::invalid_argument("mutation operator: n must be >= 1");
}

MutationOperator MutationOperator::pmut(int n, double beta) {
  if (!(beta > 1.0)) throw std::invalid_argument("pmut requires beta > 1");
  MutationOperator op(MutationKind::pmut, n, beta, "pmut:" + std::to_string(beta));
  op.dist_ = std::make_shared<PowerLawDist>(n, beta);
  return op;
}

MutationOperator MutationOperator::fmut(int n, double beta) {
  if (!(beta > 1.0)) throw std::invalid_argument("fmut requires beta > 1");
  if (n < 2) throw std::invalid_argument("fmut requires n >= 2");
  MutationOperator op(MutationKind::fmut, n, beta, "fmut:" + std::to_string(beta));
  op.dist_ = std::make_shared<PowerLawDist>(n / 2, beta);
  return op;
}

MutationOperator MutationOperator::unif(int n, double p, bool at_least_one) {
  if (!(p > 0.0) || p > static_cast<double>(n) / 2.0)
    throw std::invalid_argument("unif requires p in (0, n/2]");
  return MutationOperator(at_least_one ? MutationKind::unif1 : MutationKind::unif, n, p,
                          at_least_one ? "unif1" : "unif:" + std::to_string(p));
}

MutationOperator MutationOperator::cmut(int n, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("cmut requires p in (0,1)");
  if (n < 2) throw std::invalid_argument("cmut requires n >= 2");
  return MutationOperator(MutationKind::cmut, n, p, "cmut:" + std::to_string(p));
}

MutationOperator MutationOperator::parse(const std::string& spec, int n) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  const auto parse_number = [&](const char* what) {
    try {
      size_t used = 0;
      const double v = std::stod(arg, &used);
      if (used != arg.size() || arg.empty()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      throw std::invalid_argument(std::string("operator spec '") + spec + "': expected " + what);
    }
  };
  MutationOperator op = [&] {
    if (name == "pmut") return pmut(n, parse_number("pmut:<beta>"));
    if (name == "fmut") return fmut(n, parse_number("fmut:<beta>"));
    if (name == "unif") return unif(n, parse_number("unif:<p>"), false);
    if (name == "unif1") {
      if (!arg.empty()) throw std::invalid_argument("operator spec 'unif1' takes no parameter");
      return unif(n, 1.0, true);
    }
    if (name == "cmut") return cmut(n, parse_number("cmut:<p>"));
    throw std::invalid_argument("unknown mutation operator '" + name + "'");
  }();
  op.spec_ = spec;
  return op;
}

std::span<const int32_t> MutationOperator::mutate(BitString& x, MutationContext& ctx) const {
  if (x.size() != n_) throw std::invalid_argument("mutate: bitstring length mismatch");
  ctx.flips.clear();
  switch (kind_) {
    case MutationKind::pmut:
      flip_exact_count(x, dist_->sample(ctx.rng), ctx);
      break;
    case MutationKind::fmut: {
      const int rate = dist_->sample(ctx.rng);
      flip_each_with_prob(x, static_cast<double>(rate) / static_cast<double>(n_), ctx);
      break;
    }
    case MutationKind::unif:
      flip_each_with_prob(x, param_ / static_cast<double>(n_), ctx);
      break;
    case MutationKind::unif1:
      do {
        ctx.flips.clear();
        flip_each_with_prob(x, param_ / static_cast<double>(n_), ctx);
      } while (ctx.flips.empty());
      break;
    case MutationKind::cmut:
      if (ctx.rng.uniform01() < param_) {
        flip_exact_count(x, 1, ctx);
      } else {
        const int k = static_cast<int>(ctx.rng.uniform_int(2, n_));
        flip_exact_count(x, k, ctx);
      }
      break;
  }
  return ctx.flips;
}

BitString MutationOperator::apply(const BitString& x, MutationContext& ctx) const {
  BitString y = x;
  mutate(y, ctx);
  return y;
}

}  // namespace heavytail
