#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace heavytail {

struct ResultRow {
  std::string instance;
  std::string op;
  int run_id = 0;
  uint64_t seed = 0;
  uint64_t checkpoint = 0;
  double best_fitness = 0.0;
  double wall_ms = 0.0;
};

using ResultTable = std::vector<ResultRow>;

void write_result_csv(std::ostream& out, const ResultTable& table);
void write_result_header(std::ostream& out);
void write_result_rows(std::ostream& out, const ResultTable& rows);
ResultTable read_result_csv(std::istream& in);
ResultTable load_result_csv(const std::string& path);

/// Per-operator rank averaged over instances; rank 1 is the best mean
/// fitness, ties get the mean of the tied ranks.
struct RankTable {
  std::vector<std::string> operators;  // first-appearance order
  std::vector<double> average_rank;
  int instance_count = 0;
};

/// Ranks operators by mean best_fitness per instance at the checkpoint
/// (descending) and averages across instances. Throws if any
/// (instance, operator) cell has no rows, naming the missing cell.
RankTable average_ranks(const ResultTable& results, uint64_t checkpoint);

struct GapSummary {
  double min_gap = 0.0;
  double mean_gap = 0.0;
  double max_gap = 0.0;
  std::vector<std::pair<std::string, double>> per_instance;
};

/// Per instance: 100 * (best_mean - worst_mean) / best_mean, defined as 0
/// when the best mean is 0; summarized as min/mean/max over instances.
GapSummary gap_summary(const ResultTable& results, uint64_t checkpoint);

/// Critical distance q_{alpha,k} * sqrt(k(k+1)/(6N)) for the two-tailed
/// all-pairs rank test; alpha must be 0.05 or 0.10 and k in [2,10].
double nemenyi_critical_distance(int k, int N, double alpha);

}  // namespace heavytail
