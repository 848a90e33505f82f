#include "heavytail/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

namespace heavytail {

namespace {

bool parse_int(std::string_view tok, int64_t& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

bool parse_double(std::string_view tok, double& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

std::vector<std::string_view> split_fields(std::string& line) {
  for (char& ch : line)
    if (ch == ',' || ch == '\t' || ch == '\r') ch = ' ';
  std::vector<std::string_view> fields;
  size_t i = 0;
  const std::string_view sv(line);
  while (i < sv.size()) {
    while (i < sv.size() && sv[i] == ' ') ++i;
    const size_t start = i;
    while (i < sv.size() && sv[i] != ' ') ++i;
    if (i > start) fields.push_back(sv.substr(start, i - start));
  }
  return fields;
}

}  // namespace

DirectedGraph DirectedGraph::from_arcs(int n, std::vector<std::pair<int32_t, int32_t>> arcs) {
  DirectedGraph g;
  g.n_ = n;
  g.m_ = static_cast<int64_t>(arcs.size());
  g.out_off_.assign(static_cast<size_t>(n) + 1, 0);
  g.in_off_.assign(static_cast<size_t>(n) + 1, 0);
  for (const auto& [s, d] : arcs) {
    ++g.out_off_[static_cast<size_t>(s) + 1];
    ++g.in_off_[static_cast<size_t>(d) + 1];
  }
  for (size_t v = 0; v < static_cast<size_t>(n); ++v) {
    g.out_off_[v + 1] += g.out_off_[v];
    g.in_off_[v + 1] += g.in_off_[v];
  }
  g.out_to_.resize(static_cast<size_t>(g.m_));
  g.in_from_.resize(static_cast<size_t>(g.m_));
  std::vector<int64_t> out_pos(g.out_off_.begin(), g.out_off_.end() - 1);
  std::vector<int64_t> in_pos(g.in_off_.begin(), g.in_off_.end() - 1);
  for (const auto& [s, d] : arcs) {
    g.out_to_[static_cast<size_t>(out_pos[static_cast<size_t>(s)]++)] = d;
    g.in_from_[static_cast<size_t>(in_pos[static_cast<size_t>(d)]++)] = s;
  }
  return g;
}

DirectedGraph parse_edge_list(std::istream& input, const ParseOptions& options) {
  std::vector<std::pair<int64_t, int64_t>> raw_edges;
  int64_t self_loops = 0;
  int64_t claimed_n = 0;
  bool saw_size_line = false;
  bool saw_data_line = false;

  std::string line;
  int64_t line_no = 0;
  while (std::getline(input, line)) {
    ++line_no;
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields[0][0] == '%' || fields[0][0] == '#') continue;

    const auto fail = [&](const std::string& why) {
      throw GraphParseError("line " + std::to_string(line_no) + ": " + why);
    };

    if (fields.size() < 2 || fields.size() > 3) fail("expected 'src dst [weight]'");

    int64_t src = 0, dst = 0;
    if (!parse_int(fields[0], src)) fail("malformed source id '" + std::string(fields[0]) + "'");
    if (!parse_int(fields[1], dst)) fail("malformed target id '" + std::string(fields[1]) + "'");
    if (fields.size() == 3) {
      int64_t third_int = 0;
      const bool third_is_int = parse_int(fields[2], third_int);
      if (!saw_data_line && third_is_int && src == dst && src > 0) {
        // Matrix-Market style size line "N N M".
        saw_size_line = true;
        saw_data_line = true;
        claimed_n = src;
        continue;
      }
      double w = 0.0;
      if (!third_is_int && !parse_double(fields[2], w))
        fail("malformed weight '" + std::string(fields[2]) + "'");
      // Weights are ignored; every arc counts 1.
    }
    saw_data_line = true;
    if (src < 0 || dst < 0) fail("negative vertex id");
    if (src == dst) {
      ++self_loops;  // never crosses a cut
      continue;
    }
    raw_edges.emplace_back(src, dst);
  }

  if (raw_edges.empty()) throw GraphParseError("no edges found in input");

  // Compact ids to 0..n-1, keeping the original ids.
  std::vector<int64_t> ids;
  ids.reserve(raw_edges.size() * 2);
  int64_t min_id = raw_edges[0].first;
  for (const auto& [s, d] : raw_edges) {
    ids.push_back(s);
    ids.push_back(d);
    min_id = std::min({min_id, s, d});
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  int n = static_cast<int>(ids.size());
  if (saw_size_line && claimed_n > n) n = static_cast<int>(claimed_n);

  std::unordered_map<int64_t, int32_t> index;
  index.reserve(ids.size() * 2);
  for (size_t i = 0; i < ids.size(); ++i) index.emplace(ids[i], static_cast<int32_t>(i));

  std::vector<std::pair<int32_t, int32_t>> arcs;
  arcs.reserve(raw_edges.size() * (options.undirected ? 2 : 1));
  for (const auto& [s, d] : raw_edges) {
    const int32_t a = index[s], b = index[d];
    arcs.emplace_back(a, b);
    if (options.undirected) arcs.emplace_back(b, a);
  }
  if (options.dedup) {
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  }

  DirectedGraph g = DirectedGraph::from_arcs(n, std::move(arcs));
  g.original_ids_.assign(static_cast<size_t>(n), -1);
  for (size_t i = 0; i < ids.size(); ++i) g.original_ids_[i] = ids[i];
  g.self_loops_dropped_ = self_loops;
  g.undirected_doubled_ = options.undirected;
  g.deduplicated_ = options.dedup;
  g.zero_based_input_ = (min_id == 0);
  return g;
}

DirectedGraph load_edge_list(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw GraphParseError("cannot open '" + path + "'");
  return parse_edge_list(in, options);
}

void write_edge_list(const DirectedGraph& g, std::ostream& out) {
  // Leading size line preserves isolated vertices across a round trip.
  out << g.vertex_count() << ' ' << g.vertex_count() << ' ' << g.arc_count() << '\n';
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int32_t w : g.out_neighbors(v))
      out << g.original_id(v) << ' ' << g.original_id(w) << '\n';
}

void save_edge_list(const DirectedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GraphParseError("cannot open '" + path + "' for writing");
  write_edge_list(g, out);
  out.flush();
  if (!out) throw GraphParseError("failed writing '" + path + "'");
}

DirectedGraph random_gnp_digraph(int n, double arc_prob, uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::pair<int32_t, int32_t>> arcs;
  for (int32_t u = 0; u < n; ++u)
    for (int32_t v = 0; v < n; ++v)
      if (u != v && rng.bernoulli(arc_prob)) arcs.emplace_back(u, v);
  return DirectedGraph::from_arcs(n, std::move(arcs));
}

DirectedGraph random_gnp_undirected(int n, double edge_prob, uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::pair<int32_t, int32_t>> arcs;
  for (int32_t u = 0; u < n; ++u)
    for (int32_t v = u + 1; v < n; ++v)
      if (rng.bernoulli(edge_prob)) {
        arcs.emplace_back(u, v);
        arcs.emplace_back(v, u);
      }
  return DirectedGraph::from_arcs(n, std::move(arcs));
}

DirectedGraph random_preferential_digraph(int n, int out_arcs, uint64_t seed) {
  if (n < 2 || out_arcs < 1) throw std::invalid_argument("random_preferential_digraph: bad sizes");
  SplitMix64 rng(seed);
  std::vector<std::pair<int32_t, int32_t>> arcs;
  std::vector<int32_t> endpoints = {0};  // sampling pool, one entry per arc endpoint
  for (int32_t v = 1; v < n; ++v) {
    const int deg = std::min<int>(out_arcs, v);
    for (int e = 0; e < deg; ++e) {
      int32_t target = endpoints[rng.below(endpoints.size())];
      if (target == v) target = static_cast<int32_t>(rng.below(static_cast<uint64_t>(v)));
      arcs.emplace_back(v, target);
      endpoints.push_back(target);
    }
    endpoints.push_back(v);
  }
  return DirectedGraph::from_arcs(n, std::move(arcs));
}

DirectedGraph random_ring_digraph(int n, int k, double rewire_prob, uint64_t seed) {
  if (n < 3 || k < 1 || k >= n) throw std::invalid_argument("random_ring_digraph: bad sizes");
  SplitMix64 rng(seed);
  std::vector<std::pair<int32_t, int32_t>> arcs;
  for (int32_t u = 0; u < n; ++u)
    for (int d = 1; d <= k; ++d) {
      int32_t v = static_cast<int32_t>((u + d) % n);
      if (rng.bernoulli(rewire_prob)) {
        do {
          v = static_cast<int32_t>(rng.below(static_cast<uint64_t>(n)));
        } while (v == u);
      }
      arcs.emplace_back(u, v);
    }
  return DirectedGraph::from_arcs(n, std::move(arcs));
}

}  // namespace heavytail
