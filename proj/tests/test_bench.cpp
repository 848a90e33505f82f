#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "heavytail/bench.hpp"
#include "heavytail/graph.hpp"

using namespace heavytail;
namespace fs = std::filesystem;

TEST_SUITE_BEGIN("bench");

namespace {

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "heavytail_bench_tests";
  fs::create_directories(dir);
  return dir;
}

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.instances = {"onemax:16", "jump:2:12"};
  cfg.operators = {"pmut:1.5", "unif1"};
  cfg.repetitions = 3;
  cfg.budget = 500;
  cfg.checkpoints = {100, 500};
  cfg.master_seed = 42;
  return cfg;
}

}  // namespace

TEST_CASE("config parsing") {
  std::istringstream in(
      "# experiment\n"
      "instance = onemax:20\n"
      "instance = jump:3:10  # trailing comment\n"
      "operator = pmut:1.5\n"
      "operator = unif1\n"
      "repetitions = 7\n"
      "budget = 1000\n"
      "checkpoints = 100,1000\n"
      "master_seed = 99\n"
      "output = out.csv\n"
      "max_wall_seconds = 3.5\n"
      "threads = 2\n");
  const ExperimentConfig cfg = ExperimentConfig::parse(in);
  CHECK(cfg.instances.size() == 2);
  CHECK(cfg.operators.size() == 2);
  CHECK(cfg.repetitions == 7);
  CHECK(cfg.budget == 1000);
  CHECK(cfg.checkpoints == std::vector<uint64_t>{100, 1000});
  CHECK(cfg.master_seed == 99);
  CHECK(cfg.output_path == "out.csv");
  CHECK(cfg.max_wall_seconds == 3.5);
  CHECK(cfg.threads == 2);
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("config validation failures") {
  std::istringstream bad_key("wiggle = 3\n");
  CHECK_THROWS_AS(ExperimentConfig::parse(bad_key), std::invalid_argument);

  ExperimentConfig cfg = small_config();
  cfg.checkpoints = {600};  // beyond budget
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.operators = {"pmut:0.5"};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.repetitions = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.instances.clear();
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("trial seeds are distinct and deterministic") {
  CHECK(derive_trial_seed(1, 0, 0, 0) == derive_trial_seed(1, 0, 0, 0));
  CHECK(derive_trial_seed(1, 0, 0, 0) != derive_trial_seed(2, 0, 0, 0));
  CHECK(derive_trial_seed(1, 1, 0, 0) != derive_trial_seed(1, 0, 1, 0));
  CHECK(derive_trial_seed(1, 0, 0, 1) != derive_trial_seed(1, 0, 0, 2));
}

TEST_CASE("row counting and ordering") {
  const ExperimentConfig cfg = small_config();
  const ExperimentOutcome out = run_experiment(cfg);
  CHECK(out.skipped_instances.empty());
  CHECK(out.incomplete_pairs.empty());
  REQUIRE(out.table.size() == 2 * 2 * 3 * 2);  // instances * operators * reps * checkpoints
  // Ordered by (instance, operator, run, checkpoint) regardless of scheduling.
  size_t idx = 0;
  for (const auto& inst : cfg.instances)
    for (const auto& op : cfg.operators)
      for (int run = 0; run < cfg.repetitions; ++run)
        for (uint64_t ckpt : cfg.checkpoints) {
          const ResultRow& r = out.table[idx++];
          CHECK(r.instance == inst);
          CHECK(r.op == op);
          CHECK(r.run_id == run);
          CHECK(r.checkpoint == ckpt);
        }
}

TEST_CASE("best fitness never decreases across checkpoints within a run") {
  const ExperimentOutcome out = run_experiment(small_config());
  for (size_t i = 0; i + 1 < out.table.size(); i += 2) {
    const ResultRow& early = out.table[i];
    const ResultRow& late = out.table[i + 1];
    REQUIRE(early.run_id == late.run_id);
    CHECK(early.checkpoint < late.checkpoint);
    CHECK(early.best_fitness <= late.best_fitness);
  }
}

TEST_CASE("identical config reruns give identical fitness columns") {
  const ExperimentOutcome a = run_experiment(small_config());
  const ExperimentOutcome b = run_experiment(small_config());
  REQUIRE(a.table.size() == b.table.size());
  for (size_t i = 0; i < a.table.size(); ++i) {
    CHECK(a.table[i].seed == b.table[i].seed);
    CHECK(a.table[i].best_fitness == b.table[i].best_fitness);
  }
}

TEST_CASE("changing the master seed changes trajectories but not shape") {
  ExperimentConfig cfg = small_config();
  const ExperimentOutcome a = run_experiment(cfg);
  cfg.master_seed = 43;
  const ExperimentOutcome b = run_experiment(cfg);
  REQUIRE(a.table.size() == b.table.size());
  bool any_diff = false;
  for (size_t i = 0; i < a.table.size(); ++i)
    any_diff = any_diff || a.table[i].best_fitness != b.table[i].best_fitness;
  CHECK(any_diff);
}

TEST_CASE("thread count does not change results") {
  ExperimentConfig cfg = small_config();
  cfg.threads = 1;
  const ExperimentOutcome serial = run_experiment(cfg);
  cfg.threads = 4;
  const ExperimentOutcome parallel = run_experiment(cfg);
  REQUIRE(serial.table.size() == parallel.table.size());
  for (size_t i = 0; i < serial.table.size(); ++i)
    CHECK(serial.table[i].best_fitness == parallel.table[i].best_fitness);
}

TEST_CASE("unloadable instances are skipped with a reason, others proceed") {
  ExperimentConfig cfg = small_config();
  cfg.instances = {"dicut:/nonexistent/graph.txt", "onemax:8"};
  std::ostringstream log;
  const ExperimentOutcome out = run_experiment(cfg, &log);
  REQUIRE(out.skipped_instances.size() == 1);
  CHECK(out.skipped_instances[0].first == "dicut:/nonexistent/graph.txt");
  CHECK(out.table.size() == 1 * 2 * 3 * 2);
  CHECK(log.str().find("error:") != std::string::npos);
}

TEST_CASE("csv output is written incrementally and matches the table") {
  const fs::path csv = temp_dir() / "results.csv";
  ExperimentConfig cfg = small_config();
  cfg.output_path = csv.string();
  const ExperimentOutcome out = run_experiment(cfg);
  const ResultTable back = load_result_csv(csv.string());
  REQUIRE(back.size() == out.table.size());
  for (size_t i = 0; i < back.size(); ++i)
    CHECK(back[i].best_fitness == out.table[i].best_fitness);
  fs::remove(csv);
}

TEST_CASE("wall-clock cap marks pairs incomplete and drops their rows") {
  ExperimentConfig cfg = small_config();
  cfg.max_wall_seconds = 1e-12;
  cfg.threads = 2;  // fewer workers than repetitions, so no pair can finish
  std::ostringstream log;
  const ExperimentOutcome out = run_experiment(cfg, &log);
  CHECK(out.incomplete_pairs.size() == cfg.instances.size() * cfg.operators.size());
  CHECK(out.table.empty());
  CHECK(log.str().find("incomplete:") != std::string::npos);
}

TEST_CASE("graph instances work end to end") {
  const fs::path path = temp_dir() / "g.txt";
  save_edge_list(random_gnp_digraph(30, 0.1, 7), path.string());
  ExperimentConfig cfg;
  cfg.instances = {"dicut:" + path.string()};
  cfg.operators = {"pmut:2.5", "fmut:1.5"};
  cfg.repetitions = 2;
  cfg.budget = 2000;
  cfg.master_seed = 5;
  const ExperimentOutcome out = run_experiment(cfg);
  CHECK(out.table.size() == 1 * 2 * 2 * 1);
  for (const auto& row : out.table) CHECK(row.best_fitness > 0.0);
  fs::remove(path);
}

TEST_SUITE_END();
