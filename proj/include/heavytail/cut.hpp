#pragma once

#include <memory>

#include "heavytail/graph.hpp"
#include "heavytail/set_function.hpp"

namespace heavytail {

/// Number of arcs (u, w) with u in U and w not in U. The parallel kernel is
/// the default above a size threshold; the serial one is the reference the
/// tests compare against.
int64_t cut_value_serial(const DirectedGraph& g, const BitString& U);
int64_t cut_value_parallel(const DirectedGraph& g, const BitString& U);
int64_t cut_value(const DirectedGraph& g, const BitString& U);

/// Same quantity counted from the in-adjacency side (arcs arriving at
/// vertices outside U from inside U); equality with cut_value is a
/// structural check on the two adjacency arrays.
int64_t cut_value_in_adjacency(const DirectedGraph& g, const BitString& U);

/// Cut value after toggling `flips` in U, given current = cut_value(g, U).
/// Touches only arcs incident to flipped vertices.
int64_t cut_delta(const DirectedGraph& g, const BitString& U, int64_t current,
                  std::span<const int32_t> flips);

/// Directed cut as a fitness function (unit arc weights, non-negative,
/// submodular). Incremental evaluation switches to a full recount when the
/// flip set is large.
class DirectedCutFitness final : public SetFunction {
public:
  explicit DirectedCutFitness(std::shared_ptr<const DirectedGraph> g) : g_(std::move(g)) {}

  int ground_size() const override { return g_->vertex_count(); }
  double value(const BitString& s) const override { return static_cast<double>(cut_value(*g_, s)); }
  bool integral() const override { return true; }
  bool has_delta() const override { return true; }

  double value_flipped(const BitString& s, std::span<const int32_t> flips,
                       double current) const override;

  const DirectedGraph& graph() const { return *g_; }

private:
  std::shared_ptr<const DirectedGraph> g_;
};

}  // namespace heavytail
