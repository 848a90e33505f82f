#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heavytail/rng.hpp"

namespace heavytail {

struct ParseOptions {
  bool undirected = false;  // ingest each edge as an arc pair u->v, v->u
  bool dedup = false;       // drop duplicate arcs instead of keeping them
};

struct GraphParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Immutable directed graph in compressed sparse row form, with both
/// out- and in-adjacency (the latter is needed for incremental cut updates).
/// Vertex ids from the input are compacted to 0..n-1; the original ids are
/// retained for serialization.
class DirectedGraph {
public:
  DirectedGraph() = default;

  /// Arcs are (src, dst) over 0..n-1; self-loops must already be removed.
  static DirectedGraph from_arcs(int n, std::vector<std::pair<int32_t, int32_t>> arcs);

  int vertex_count() const { return n_; }
  int64_t arc_count() const { return m_; }

  std::span<const int32_t> out_neighbors(int v) const {
    return {out_to_.data() + out_off_[static_cast<size_t>(v)],
            out_to_.data() + out_off_[static_cast<size_t>(v) + 1]};
  }
  std::span<const int32_t> in_neighbors(int v) const {
    return {in_from_.data() + in_off_[static_cast<size_t>(v)],
            in_from_.data() + in_off_[static_cast<size_t>(v) + 1]};
  }
  int64_t out_degree(int v) const {
    return out_off_[static_cast<size_t>(v) + 1] - out_off_[static_cast<size_t>(v)];
  }
  int64_t in_degree(int v) const {
    return in_off_[static_cast<size_t>(v) + 1] - in_off_[static_cast<size_t>(v)];
  }

  int64_t self_loops_dropped() const { return self_loops_dropped_; }
  bool undirected_doubled() const { return undirected_doubled_; }
  bool deduplicated() const { return deduplicated_; }
  bool zero_based_input() const { return zero_based_input_; }

  /// Original input id of vertex v (-1 for vertices implied only by a size line).
  int64_t original_id(int v) const {
    return original_ids_.empty() ? v : original_ids_[static_cast<size_t>(v)];
  }

private:
  friend DirectedGraph parse_edge_list(std::istream&, const ParseOptions&);

  int n_ = 0;
  int64_t m_ = 0;
  std::vector<int64_t> out_off_, in_off_;
  std::vector<int32_t> out_to_, in_from_;
  std::vector<int64_t> original_ids_;
  int64_t self_loops_dropped_ = 0;
  bool undirected_doubled_ = false;
  bool deduplicated_ = false;
  bool zero_based_input_ = false;
};

/// Parses whitespace- or comma-separated "src dst [weight]" lines.
/// '%' and '#' lines are comments; a leading size line "N N M" is skipped;
/// 0- vs 1-based ids are auto-detected (minimum id 0 means 0-based); weights
/// are ignored; self-loops are dropped and counted. Throws GraphParseError
/// with the offending line number on malformed input, and on empty input.
DirectedGraph parse_edge_list(std::istream& input, const ParseOptions& options = {});
DirectedGraph load_edge_list(const std::string& path, const ParseOptions& options = {});

/// Emits "src dst" lines using original vertex ids; reparsing the output
/// (with default options) reproduces the graph.
void write_edge_list(const DirectedGraph& g, std::ostream& out);
void save_edge_list(const DirectedGraph& g, const std::string& path);

// Synthetic instance generators (deterministic in the seed).

/// Every ordered pair (u, v), u != v, becomes an arc with probability arc_prob.
DirectedGraph random_gnp_digraph(int n, double arc_prob, uint64_t seed);

/// Every unordered pair becomes an arc pair with probability edge_prob, so the
/// cut function is symmetric.
DirectedGraph random_gnp_undirected(int n, double edge_prob, uint64_t seed);

/// Growing network: each new vertex sends `out_arcs` arcs to ends of existing
/// arcs (preferential attachment), giving a heavy-tailed in-degree profile.
DirectedGraph random_preferential_digraph(int n, int out_arcs, uint64_t seed);

/// Directed ring lattice (each vertex points to its k successors) with each
/// arc head rewired uniformly with probability rewire_prob.
DirectedGraph random_ring_digraph(int n, int k, double rewire_prob, uint64_t seed);

}  // namespace heavytail
