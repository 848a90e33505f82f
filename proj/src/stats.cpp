#include "heavytail/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace heavytail {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_result_header(std::ostream& out) {
  out << "instance,operator,run_id,seed,checkpoint,best_fitness,wall_ms\n";
}

void write_result_rows(std::ostream& out, const ResultTable& rows) {
  for (const auto& r : rows) {
    out << r.instance << ',' << r.op << ',' << r.run_id << ',' << r.seed << ',' << r.checkpoint
        << ',' << format_double(r.best_fitness) << ',' << format_double(r.wall_ms) << '\n';
  }
}

void write_result_csv(std::ostream& out, const ResultTable& table) {
  write_result_header(out);
  write_result_rows(out, table);
}

ResultTable read_result_csv(std::istream& in) {
  ResultTable table;
  std::string line;
  int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("instance,", 0) == 0) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 7)
      throw std::invalid_argument("results csv line " + std::to_string(line_no) +
                                  ": expected 7 columns");
    try {
      ResultRow r;
      r.instance = cells[0];
      r.op = cells[1];
      r.run_id = std::stoi(cells[2]);
      r.seed = std::stoull(cells[3]);
      r.checkpoint = std::stoull(cells[4]);
      r.best_fitness = std::stod(cells[5]);
      r.wall_ms = std::stod(cells[6]);
      table.push_back(std::move(r));
    } catch (const std::exception&) {
      throw std::invalid_argument("results csv line " + std::to_string(line_no) +
                                  ": malformed value");
    }
  }
  return table;
}

ResultTable load_result_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open results csv '" + path + "'");
  return read_result_csv(in);
}

namespace {

struct CellMeans {
  std::vector<std::string> instances;  // first-appearance order
  std::vector<std::string> operators;
  // means[i][j]: mean best_fitness of operator j on instance i
  std::vector<std::vector<double>> means;
};

CellMeans collect_means(const ResultTable& results, uint64_t checkpoint) {
  CellMeans cm;
  std::map<std::string, size_t> inst_idx, op_idx;
  std::vector<std::vector<std::pair<double, int64_t>>> acc;  // (sum, count)
  for (const auto& r : results) {
    if (r.checkpoint != checkpoint) continue;
    if (!inst_idx.count(r.instance)) {
      inst_idx[r.instance] = cm.instances.size();
      cm.instances.push_back(r.instance);
    }
    if (!op_idx.count(r.op)) {
      op_idx[r.op] = cm.operators.size();
      cm.operators.push_back(r.op);
    }
  }
  if (cm.instances.empty())
    throw std::invalid_argument("no rows at checkpoint " + std::to_string(checkpoint));
  acc.assign(cm.instances.size(),
             std::vector<std::pair<double, int64_t>>(cm.operators.size(), {0.0, 0}));
  for (const auto& r : results) {
    if (r.checkpoint != checkpoint) continue;
    auto& cell = acc[inst_idx[r.instance]][op_idx[r.op]];
    cell.first += r.best_fitness;
    cell.second += 1;
  }
  cm.means.assign(cm.instances.size(), std::vector<double>(cm.operators.size(), 0.0));
  for (size_t i = 0; i < cm.instances.size(); ++i) {
    for (size_t j = 0; j < cm.operators.size(); ++j) {
      if (acc[i][j].second == 0)
        throw std::invalid_argument("missing results for instance '" + cm.instances[i] +
                                    "', operator '" + cm.operators[j] + "' at checkpoint " +
                                    std::to_string(checkpoint));
      cm.means[i][j] = acc[i][j].first / static_cast<double>(acc[i][j].second);
    }
  }
  return cm;
}

}  // namespace

RankTable average_ranks(const ResultTable& results, uint64_t checkpoint) {
  const CellMeans cm = collect_means(results, checkpoint);
  const size_t k = cm.operators.size();
  RankTable out;
  out.operators = cm.operators;
  out.average_rank.assign(k, 0.0);
  out.instance_count = static_cast<int>(cm.instances.size());

  for (const auto& row : cm.means) {
    // Sort operator indices by mean descending; equal means share the mean
    // of the rank positions they occupy.
    std::vector<size_t> order(k);
    for (size_t j = 0; j < k; ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return row[a] > row[b]; });
    size_t pos = 0;
    while (pos < k) {
      size_t end = pos + 1;
      while (end < k && row[order[end]] == row[order[pos]]) ++end;
      const double shared = (static_cast<double>(pos + 1) + static_cast<double>(end)) / 2.0;
      for (size_t t = pos; t < end; ++t) out.average_rank[order[t]] += shared;
      pos = end;
    }
  }
  for (double& r : out.average_rank) r /= static_cast<double>(cm.instances.size());
  return out;
}

GapSummary gap_summary(const ResultTable& results, uint64_t checkpoint) {
  const CellMeans cm = collect_means(results, checkpoint);
  GapSummary out;
  double total = 0.0;
  for (size_t i = 0; i < cm.instances.size(); ++i) {
    const auto [lo, hi] = std::minmax_element(cm.means[i].begin(), cm.means[i].end());
    const double best = *hi, worst = *lo;
    const double gap = best == 0.0 ? 0.0 : 100.0 * (best - worst) / best;
    out.per_instance.emplace_back(cm.instances[i], gap);
    total += gap;
    if (i == 0) {
      out.min_gap = out.max_gap = gap;
    } else {
      out.min_gap = std::min(out.min_gap, gap);
      out.max_gap = std::max(out.max_gap, gap);
    }
  }
  out.mean_gap = total / static_cast<double>(cm.instances.size());
  return out;
}

double nemenyi_critical_distance(int k, int N, double alpha) {
  if (k < 2 || k > 10) throw std::invalid_argument("nemenyi_critical_distance: k must be in [2,10]");
  if (N < 2) throw std::invalid_argument("nemenyi_critical_distance: N must be >= 2");
  // Two-tailed studentized-range quantiles divided by sqrt(2), k = 2..10.
  static constexpr double kQ05[] = {1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031, 3.102, 3.164};
  static constexpr double kQ10[] = {1.645, 2.052, 2.291, 2.459, 2.589, 2.693, 2.780, 2.855, 2.920};
  const double* table = nullptr;
  if (std::abs(alpha - 0.05) < 1e-12) {
    table = kQ05;
  } else if (std::abs(alpha - 0.10) < 1e-12) {
    table = kQ10;
  } else {
    throw std::invalid_argument("nemenyi_critical_distance: alpha must be 0.05 or 0.10");
  }
  const double q = table[k - 2];
  return q * std::sqrt(static_cast<double>(k) * (k + 1) / (6.0 * N));
}

}  // namespace heavytail
