#include "heavytail/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

#include "heavytail/bench.hpp"
#include "heavytail/ea.hpp"
#include "heavytail/specs.hpp"
#include "heavytail/submodular.hpp"

namespace heavytail {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// --undirected is sugar for the spec-level option on graph-backed fitnesses.
std::string with_undirected(const std::string& spec) {
  if (spec.rfind("dicut:", 0) == 0) return spec + ":undirected";
  if (spec.rfind("dicut+matroid:", 0) == 0) return spec + ",undirected";
  throw std::invalid_argument("--undirected only applies to dicut fitness specs");
}

int cmd_run(const std::string& fitness_spec, const std::string& operator_spec, uint64_t budget,
            uint64_t seed, const std::string& out_path, double target, bool has_target,
            std::ostream& out) {
  auto fitness = make_fitness(fitness_spec);
  const MutationOperator op = make_operator(operator_spec, fitness->ground_size());
  StopCondition stop;
  stop.max_evaluations = budget;
  if (has_target) stop.target_fitness = target;
  const RunRecord rec = run_opo_ea(*fitness, op, stop, seed);

  std::ofstream file;
  std::ostream* sink = &out;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw std::invalid_argument("cannot open '" + out_path + "'");
    sink = &file;
  }
  *sink << "evaluation,best_fitness\n";
  for (const auto& [eval, fit] : rec.improvements) *sink << eval << ',' << fmt(fit) << '\n';
  out << "final_fitness=" << fmt(rec.final_fitness) << " evaluations=" << rec.evaluations_used
      << " seed=" << rec.seed << "\n";
  return 0;
}

int cmd_bench(const std::string& config_path, std::ostream& out) {
  const ExperimentConfig config = ExperimentConfig::load(config_path);
  const ExperimentOutcome outcome = run_experiment(config, &out);
  out << "rows=" << outcome.table.size() << " skipped=" << outcome.skipped_instances.size()
      << " incomplete=" << outcome.incomplete_pairs.size() << "\n";
  if (config.output_path.empty()) write_result_csv(out, outcome.table);
  return 0;
}

int cmd_rank(const std::string& results_path, uint64_t checkpoint, double alpha,
             const std::string& out_prefix, std::ostream& out) {
  const ResultTable table = load_result_csv(results_path);
  const RankTable ranks = average_ranks(table, checkpoint);
  const GapSummary gaps = gap_summary(table, checkpoint);
  const double cd = nemenyi_critical_distance(static_cast<int>(ranks.operators.size()),
                                              ranks.instance_count, alpha);

  const std::string rank_path = out_prefix + "_ranks.csv";
  const std::string gap_path = out_prefix + "_gaps.csv";
  {
    std::ofstream f(rank_path);
    if (!f) throw std::invalid_argument("cannot open '" + rank_path + "'");
    f << "operator,avg_rank_at_" << checkpoint << "\n";
    for (size_t j = 0; j < ranks.operators.size(); ++j)
      f << ranks.operators[j] << ',' << fmt(ranks.average_rank[j]) << '\n';
  }
  {
    std::ofstream f(gap_path);
    if (!f) throw std::invalid_argument("cannot open '" + gap_path + "'");
    f << "instance,gap_percent_at_" << checkpoint << "\n";
    for (const auto& [inst, gap] : gaps.per_instance) f << inst << ',' << fmt(gap) << '\n';
  }

  for (size_t j = 0; j < ranks.operators.size(); ++j)
    out << "rank " << ranks.operators[j] << " " << fmt(ranks.average_rank[j]) << "\n";
  out << "gaps min=" << fmt(gaps.min_gap) << " mean=" << fmt(gaps.mean_gap)
      << " max=" << fmt(gaps.max_gap) << "\n";
  out << "critical_distance=" << fmt(cd) << " k=" << ranks.operators.size()
      << " N=" << ranks.instance_count << " alpha=" << alpha << "\n";
  out << "wrote " << rank_path << " and " << gap_path << "\n";
  return 0;
}

int cmd_oracle(const std::string& fitness_spec, const std::string& constraint_spec,
               std::ostream& out) {
  auto fitness = make_fitness(fitness_spec);
  std::pair<BitString, double> result;
  if (!constraint_spec.empty()) {
    auto matroid = make_constraint(constraint_spec, fitness->ground_size());
    FeasibilityOracle feasible = [matroid](const BitString& s) { return matroid->independent(s); };
    result = brute_force_max(*fitness, &feasible);
  } else {
    result = brute_force_max(*fitness);
  }
  out << "opt=" << fmt(result.second) << "\n";
  out << "argmax=" << result.first.to_string() << "\n";
  return 0;
}

int cmd_sample(const std::string& operator_spec, int n, uint64_t draws, uint64_t seed,
               const std::string& out_path, std::ostream& out) {
  const MutationOperator op = make_operator(operator_spec, n);
  MutationContext ctx(seed, n);
  const BitString x(n);
  std::map<int, uint64_t> histogram;
  BitString y = x;
  for (uint64_t d = 0; d < draws; ++d) {
    const auto flips = op.mutate(y, ctx);
    ++histogram[static_cast<int>(flips.size())];
    for (int32_t p : flips) y.flip(p);  // restore
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw std::invalid_argument("cannot open '" + out_path + "'");
    sink = &file;
  }
  *sink << "k,count,frequency\n";
  for (const auto& [k, count] : histogram)
    *sink << k << ',' << count << ',' << fmt(static_cast<double>(count) / static_cast<double>(draws))
          << '\n';
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heavy-tailed mutation toolkit: elitist single-parent search on "
               "pseudo-Boolean and submodular landscapes"};
  app.require_subcommand(1);

  std::string fitness_spec, operator_spec, out_path, config_path, results_path, constraint_spec;
  std::string out_prefix = "rank";
  uint64_t budget = 100000, seed = 0, checkpoint = 0, draws = 1000000;
  int sample_n = 64;
  double alpha = 0.05, target = 0.0;
  bool undirected = false;

  auto* run = app.add_subcommand("run", "Single seeded run; improvement trajectory as CSV");
  run->add_option("--fitness", fitness_spec, "Fitness spec, e.g. onemax:20, dicut:graph.txt")
      ->required();
  run->add_option("--operator", operator_spec, "Mutation spec, e.g. pmut:1.5, unif1")->required();
  run->add_option("--budget", budget, "Evaluation budget")->required();
  run->add_option("--seed", seed, "Run seed")->required();
  run->add_option("--out", out_path, "Trajectory CSV path (default: stdout)");
  run->add_flag("--undirected", undirected, "Ingest the graph edges as arc pairs");
  auto* target_opt = run->add_option("--target", target, "Stop early at this fitness");

  auto* bench = app.add_subcommand("bench", "Run a declarative experiment batch");
  bench->add_option("--config", config_path, "Experiment config file")->required();

  auto* rank = app.add_subcommand("rank", "Average ranks, gaps and critical distance");
  rank->add_option("--results", results_path, "Results CSV from bench")->required();
  rank->add_option("--checkpoint", checkpoint, "Checkpoint to rank at")->required();
  rank->add_option("--alpha", alpha, "Significance level (0.05 or 0.10)");
  rank->add_option("--out-prefix", out_prefix, "Prefix for <prefix>_ranks.csv / <prefix>_gaps.csv");

  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum (n <= 24)");
  oracle->add_option("--fitness", fitness_spec, "Fitness spec")->required();
  oracle->add_option("--constraint", constraint_spec, "Constraint spec, e.g. uniform:4");
  oracle->add_flag("--undirected", undirected, "Ingest the graph edges as arc pairs");

  auto* sample = app.add_subcommand("sample", "Flip-count histogram of a mutation operator");
  sample->add_option("--operator", operator_spec, "Mutation spec")->required();
  sample->add_option("--n", sample_n, "Bitstring length")->required();
  sample->add_option("--draws", draws, "Number of mutations to sample")->required();
  sample->add_option("--seed", seed, "Sampling seed");
  sample->add_option("--out", out_path, "Histogram CSV path (default: stdout)");

  std::vector<std::string> argv_copy = args;
  try {
    std::vector<char*> argv;
    argv.reserve(argv_copy.size() + 1);
    static char name[] = "heavytail";
    argv.push_back(name);
    for (auto& a : argv_copy) argv.push_back(a.data());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (undirected) fitness_spec = with_undirected(fitness_spec);
    if (run->parsed())
      return cmd_run(fitness_spec, operator_spec, budget, seed, out_path, target,
                     target_opt->count() > 0, out);
    if (bench->parsed()) return cmd_bench(config_path, out);
    if (rank->parsed()) return cmd_rank(results_path, checkpoint, alpha, out_prefix, out);
    if (oracle->parsed()) return cmd_oracle(fitness_spec, constraint_spec, out);
    if (sample->parsed())
      return cmd_sample(operator_spec, sample_n, draws, seed, out_path, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand given\n";
  return 2;
}

}  // namespace heavytail
