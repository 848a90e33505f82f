#include "heavytail/specs.hpp"

#include <stdexcept>
#include <vector>

#include "heavytail/cut.hpp"
#include "heavytail/landscapes.hpp"
#include "heavytail/mutual_info.hpp"

namespace heavytail {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

int parse_positive_int(const std::string& tok, const std::string& spec) {
  try {
    size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size() || v < 1) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument("fitness spec '" + spec + "': expected positive integer, got '" +
                                tok + "'");
  }
}

}  // namespace

std::shared_ptr<SetFunction> make_fitness(const std::string& spec) {
  const auto parts = split(spec, ':');
  const std::string& head = parts[0];
  const auto fail = [&](const std::string& why) {
    throw std::invalid_argument("fitness spec '" + spec + "': " + why);
  };

  if (head == "onemax") {
    if (parts.size() != 2) fail("expected onemax:<n>");
    return std::make_shared<OneMax>(parse_positive_int(parts[1], spec));
  }
  if (head == "jump") {
    if (parts.size() != 3) fail("expected jump:<m>:<n>");
    const int m = parse_positive_int(parts[1], spec);
    const int n = parse_positive_int(parts[2], spec);
    return std::make_shared<Jump>(JumpParams(m, n));
  }
  const auto load_graph = [&](const std::string& path, const ParseOptions& opts) {
    try {
      return std::make_shared<DirectedGraph>(load_edge_list(path, opts));
    } catch (const GraphParseError& e) {
      fail(e.what());
      return std::shared_ptr<DirectedGraph>();  // unreachable
    }
  };

  if (head == "dicut") {
    if (parts.size() < 2 || parts.size() > 3) fail("expected dicut:<path>[:undirected]");
    ParseOptions opts;
    if (parts.size() == 3) {
      if (parts[2] != "undirected") fail("unknown option '" + parts[2] + "'");
      opts.undirected = true;
    }
    return std::make_shared<DirectedCutFitness>(load_graph(parts[1], opts));
  }
  if (head == "dicut+matroid") {
    if (parts.size() < 3) fail("expected dicut+matroid:<path>:<constraint>[,undirected]");
    std::string constraint = parts[2];
    for (size_t i = 3; i < parts.size(); ++i) constraint += ":" + parts[i];
    ParseOptions opts;
    const auto comma = constraint.find(',');
    if (comma != std::string::npos) {
      if (constraint.substr(comma + 1) != "undirected")
        fail("unknown option '" + constraint.substr(comma + 1) + "'");
      opts.undirected = true;
      constraint.resize(comma);
    }
    auto cut = std::make_shared<DirectedCutFitness>(load_graph(parts[1], opts));
    auto matroid = make_constraint(constraint, cut->ground_size());
    return std::make_shared<ConstrainedFitness>(std::move(cut), std::move(matroid));
  }
  if (head == "mi") {
    if (parts.size() < 3 || parts.size() > 4) fail("expected mi:<csvpath>:<k>[:literal]");
    MIVariant variant = MIVariant::log_form;
    if (parts.size() == 4) {
      if (parts[3] != "literal") fail("unknown option '" + parts[3] + "'");
      variant = MIVariant::literal;
    }
    const int k = parse_positive_int(parts[2], spec);
    const TimeSeriesPanel panel = load_panel_csv(parts[1]);
    const TimeSeriesPanel diffed = temporal_diff(panel);
    CovarianceMatrix sigma = covariance(diffed);
    return std::make_shared<MIFitness>(std::move(sigma), k, variant);
  }
  fail("unknown fitness kind '" + head + "'");
  return nullptr;  // unreachable
}

std::shared_ptr<Matroid> make_constraint(const std::string& spec, int ground_size) {
  const auto parts = split(spec, ':');
  const auto fail = [&](const std::string& why) {
    throw std::invalid_argument("constraint spec '" + spec + "': " + why);
  };
  if (parts[0] == "uniform") {
    if (parts.size() != 2) fail("expected uniform:<k>");
    return std::make_shared<UniformMatroid>(ground_size, parse_positive_int(parts[1], spec));
  }
  if (parts[0] == "partition") {
    if (parts.size() != 2) fail("expected partition:<blockfile>");
    return std::make_shared<PartitionMatroid>(load_partition_blocks(ground_size, parts[1]));
  }
  fail("unknown constraint kind '" + parts[0] + "'");
  return nullptr;  // unreachable
}

MutationOperator make_operator(const std::string& spec, int n) {
  return MutationOperator::parse(spec, n);
}

}  // namespace heavytail
