#include "heavytail/cut.hpp"

#include <algorithm>

namespace heavytail {

namespace {
constexpr int64_t kParallelArcThreshold = 1 << 16;
}

int64_t cut_value_serial(const DirectedGraph& g, const BitString& U) {
  const int n = g.vertex_count();
  int64_t cut = 0;
  for (int u = 0; u < n; ++u) {
    if (!U.test(u)) continue;
    for (int32_t w : g.out_neighbors(u)) cut += !U.test(w);
  }
  return cut;
}

int64_t cut_value_parallel(const DirectedGraph& g, const BitString& U) {
  const int n = g.vertex_count();
  int64_t cut = 0;
#pragma omp parallel for schedule(static) reduction(+ : cut)
  for (int u = 0; u < n; ++u) {
    if (!U.test(u)) continue;
    int64_t local = 0;
    for (int32_t w : g.out_neighbors(u)) local += !U.test(w);
    cut += local;
  }
  return cut;
}

int64_t cut_value(const DirectedGraph& g, const BitString& U) {
  return g.arc_count() >= kParallelArcThreshold ? cut_value_parallel(g, U)
                                                : cut_value_serial(g, U);
}

int64_t cut_value_in_adjacency(const DirectedGraph& g, const BitString& U) {
  const int n = g.vertex_count();
  int64_t cut = 0;
  for (int w = 0; w < n; ++w) {
    if (U.test(w)) continue;
    for (int32_t u : g.in_neighbors(w)) cut += U.test(u);
  }
  return cut;
}

namespace {

// Membership helper over the (small) flip set.
struct FlipSet {
  explicit FlipSet(std::span<const int32_t> flips) : sorted(flips.begin(), flips.end()) {
    std::sort(sorted.begin(), sorted.end());
  }
  bool contains(int32_t v) const {
    return std::binary_search(sorted.begin(), sorted.end(), v);
  }
  std::vector<int32_t> sorted;
};

}  // namespace

int64_t cut_delta(const DirectedGraph& g, const BitString& U, int64_t current,
                  std::span<const int32_t> flips) {
  if (flips.empty()) return current;
  const FlipSet fs(flips);
  int64_t delta = 0;
  for (int32_t u : flips) {
    const bool su = U.test(u);
    const bool nu = !su;
    // Outgoing arcs of u: arcs between two flipped vertices are settled here.
    for (int32_t w : g.out_neighbors(u)) {
      const bool sw = U.test(w);
      const bool nw = fs.contains(w) ? !sw : sw;
      delta += static_cast<int>(nu && !nw) - static_cast<int>(su && !sw);
    }
    // Incoming arcs from unflipped sources only.
    for (int32_t w : g.in_neighbors(u)) {
      if (fs.contains(w)) continue;
      const bool sw = U.test(w);
      delta += static_cast<int>(sw && !nu) - static_cast<int>(sw && !su);
    }
  }
  return current + delta;
}

double DirectedCutFitness::value_flipped(const BitString& s, std::span<const int32_t> flips,
                                         double current) const {
  // A heavy-tailed mutation occasionally flips a constant fraction of all
  // bits; beyond that point a full recount is cheaper than the delta walk.
  if (static_cast<int64_t>(flips.size()) * 4 >= g_->vertex_count()) {
    BitString t = s;
    for (int32_t p : flips) t.flip(p);
    return static_cast<double>(cut_value(*g_, t));
  }
  return static_cast<double>(
      cut_delta(*g_, s, static_cast<int64_t>(current), flips));
}

}  // namespace heavytail
