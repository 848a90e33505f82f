#include "heavytail/bench.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "heavytail/ea.hpp"
#include "heavytail/rng.hpp"
#include "heavytail/specs.hpp"

namespace heavytail {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

uint64_t parse_u64(const std::string& v, const std::string& key) {
  try {
    size_t used = 0;
    const uint64_t x = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw std::invalid_argument("config: bad value '" + v + "' for " + key);
  }
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key == "instance") {
      cfg.instances.push_back(value);
    } else if (key == "operator") {
      cfg.operators.push_back(value);
    } else if (key == "repetitions") {
      cfg.repetitions = static_cast<int>(parse_u64(value, key));
    } else if (key == "budget") {
      cfg.budget = parse_u64(value, key);
    } else if (key == "master_seed") {
      cfg.master_seed = parse_u64(value, key);
    } else if (key == "output") {
      cfg.output_path = value;
    } else if (key == "max_wall_seconds") {
      cfg.max_wall_seconds = std::stod(value);
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(parse_u64(value, key));
    } else if (key == "checkpoints" || key == "checkpoint") {
      std::stringstream ss(value);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) cfg.checkpoints.push_back(parse_u64(tok, key));
      }
    } else {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" +
                                  key + "'");
    }
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
  return parse(in);
}

void ExperimentConfig::validate() const {
  if (instances.empty()) throw std::invalid_argument("config: no instances");
  if (operators.empty()) throw std::invalid_argument("config: no operators");
  if (repetitions < 1) throw std::invalid_argument("config: repetitions must be >= 1");
  if (budget < 1) throw std::invalid_argument("config: budget must be >= 1");
  for (uint64_t c : checkpoints)
    if (c < 1 || c > budget)
      throw std::invalid_argument("config: checkpoint " + std::to_string(c) +
                                  " outside [1, budget]");
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end()))
    throw std::invalid_argument("config: checkpoints must be sorted");
  for (const auto& spec : operators)
    (void)make_operator(spec, 8);  // parse check against a placeholder length
}

uint64_t derive_trial_seed(uint64_t master_seed, int instance_idx, int operator_idx, int run_id) {
  uint64_t s = master_seed;
  s = mix64(s ^ (0x9e3779b97f4a7c15ULL + static_cast<uint64_t>(instance_idx)));
  s = mix64(s ^ (0xc2b2ae3d27d4eb4fULL + static_cast<uint64_t>(operator_idx)));
  s = mix64(s ^ (0x165667b19e3779f9ULL + static_cast<uint64_t>(run_id)));
  return s;
}

ExperimentOutcome run_experiment(const ExperimentConfig& config, std::ostream* log) {
  config.validate();
  ExperimentOutcome outcome;

  std::vector<uint64_t> checkpoints = config.checkpoints;
  if (checkpoints.empty()) checkpoints.push_back(config.budget);

  std::ofstream csv;
  if (!config.output_path.empty()) {
    csv.open(config.output_path);
    if (!csv) throw std::invalid_argument("cannot open output '" + config.output_path + "'");
    write_result_header(csv);
  }

  const int old_threads = omp_get_max_threads();
  if (config.threads > 0) omp_set_num_threads(config.threads);

  for (size_t ii = 0; ii < config.instances.size(); ++ii) {
    const std::string& inst_spec = config.instances[ii];
    std::shared_ptr<SetFunction> fitness;
    try {
      fitness = make_fitness(inst_spec);
    } catch (const std::exception& e) {
      outcome.skipped_instances.emplace_back(inst_spec, e.what());
      if (log) *log << "error: instance " << inst_spec << " skipped: " << e.what() << "\n";
      continue;
    }
    const int n = fitness->ground_size();

    std::vector<MutationOperator> ops;
    ops.reserve(config.operators.size());
    for (const auto& spec : config.operators) ops.push_back(make_operator(spec, n));

    const int reps = config.repetitions;
    const size_t trials = config.operators.size() * static_cast<size_t>(reps);
    ResultTable rows(trials * checkpoints.size());
    std::vector<double> pair_elapsed(config.operators.size(), 0.0);
    std::vector<char> trial_done(trials, 0);

#pragma omp parallel for schedule(dynamic)
    for (int64_t t = 0; t < static_cast<int64_t>(trials); ++t) {
      const size_t oi = static_cast<size_t>(t) / static_cast<size_t>(reps);
      const int run = static_cast<int>(static_cast<size_t>(t) % static_cast<size_t>(reps));
      if (config.max_wall_seconds > 0) {
        double elapsed;
#pragma omp atomic read
        elapsed = pair_elapsed[oi];
        if (elapsed >= config.max_wall_seconds) continue;
      }
      const uint64_t seed =
          derive_trial_seed(config.master_seed, static_cast<int>(ii), static_cast<int>(oi), run);
      StopCondition stop;
      stop.max_evaluations = config.budget;
      const auto t0 = std::chrono::steady_clock::now();
      const RunRecord rec = run_opo_ea(*fitness, ops[oi], stop, seed);
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      if (config.max_wall_seconds > 0) {
#pragma omp atomic
        pair_elapsed[oi] += ms / 1000.0;
      }
      for (size_t ci = 0; ci < checkpoints.size(); ++ci) {
        ResultRow& r = rows[static_cast<size_t>(t) * checkpoints.size() + ci];
        r.instance = inst_spec;
        r.op = config.operators[oi];
        r.run_id = run;
        r.seed = seed;
        r.checkpoint = checkpoints[ci];
        r.best_fitness = rec.best_at(checkpoints[ci]);
        r.wall_ms = ms;
      }
      trial_done[static_cast<size_t>(t)] = 1;
    }

    // Pairs where every trial finished go into the table; capped pairs are
    // recorded as incomplete and their partial rows dropped.
    for (size_t oi = 0; oi < config.operators.size(); ++oi) {
      bool complete = true;
      for (int run = 0; run < reps; ++run)
        complete = complete && trial_done[oi * static_cast<size_t>(reps) + static_cast<size_t>(run)];
      if (!complete) {
        outcome.incomplete_pairs.emplace_back(inst_spec, config.operators[oi]);
        if (log)
          *log << "incomplete: instance " << inst_spec << " operator " << config.operators[oi]
               << " hit the wall-clock cap\n";
        continue;
      }
      ResultTable batch;
      batch.reserve(static_cast<size_t>(reps) * checkpoints.size());
      for (int run = 0; run < reps; ++run) {
        const size_t t = oi * static_cast<size_t>(reps) + static_cast<size_t>(run);
        for (size_t ci = 0; ci < checkpoints.size(); ++ci)
          batch.push_back(rows[t * checkpoints.size() + ci]);
      }
      if (csv.is_open()) {
        write_result_rows(csv, batch);
        csv.flush();
      }
      outcome.table.insert(outcome.table.end(), batch.begin(), batch.end());
      if (log)
        *log << "done: instance " << inst_spec << " operator " << config.operators[oi] << " runs "
             << reps << "\n";
    }
  }

  if (config.threads > 0) omp_set_num_threads(old_threads);
  return outcome;
}

}  // namespace heavytail
