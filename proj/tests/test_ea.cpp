#include <doctest.h>

#include "heavytail/ea.hpp"
#include "heavytail/landscapes.hpp"
#include "support.hpp"

using namespace heavytail;

TEST_SUITE_BEGIN("ea");

TEST_CASE("flat landscape records only the initial evaluation") {
  testing::LambdaSetFunction flat(16, [](const BitString&) { return 0.0; });
  const MutationOperator op = MutationOperator::pmut(16, 1.5);
  StopCondition stop;
  stop.max_evaluations = 5000;
  const RunRecord rec = run_opo_ea(flat, op, stop, 123);
  CHECK(rec.final_fitness == 0.0);
  CHECK(rec.improvements.size() == 1);
  CHECK(rec.improvements[0].first == 1);
  CHECK(rec.evaluations_used == 5000);
}

TEST_CASE("identical seed and config give identical records") {
  OneMax f(24);
  const MutationOperator op = MutationOperator::parse("fmut:1.5", 24);
  StopCondition stop;
  stop.max_evaluations = 2000;
  const RunRecord a = run_opo_ea(f, op, stop, 99);
  const RunRecord b = run_opo_ea(f, op, stop, 99);
  CHECK(a.improvements == b.improvements);
  CHECK(a.final_solution == b.final_solution);
  CHECK(a.final_fitness == b.final_fitness);
  CHECK(a.evaluations_used == b.evaluations_used);
}

TEST_CASE("improvement log is strictly increasing in both coordinates") {
  OneMax f(48);
  const MutationOperator op = MutationOperator::parse("pmut:1.5", 48);
  StopCondition stop;
  stop.max_evaluations = 20000;
  const RunRecord rec = run_opo_ea(f, op, stop, 7);
  for (size_t i = 1; i < rec.improvements.size(); ++i) {
    CHECK(rec.improvements[i].first > rec.improvements[i - 1].first);
    CHECK(rec.improvements[i].second > rec.improvements[i - 1].second);
  }
  CHECK(rec.final_fitness == rec.improvements.back().second);
}

TEST_CASE("parent fitness never decreases across iterations") {
  OneMax f(20);
  const MutationOperator op = MutationOperator::parse("cmut:0.5", 20);
  StopCondition stop;
  stop.max_evaluations = 3000;
  double last = -1.0;
  uint64_t steps = 0;
  StepObserver obs = [&](uint64_t, double fitness) {
    CHECK(fitness >= last);
    last = fitness;
    ++steps;
  };
  const RunRecord rec = run_opo_ea(f, op, stop, 5, nullptr, &obs);
  CHECK(steps == rec.evaluations_used);
}

TEST_CASE("target stops the run early") {
  OneMax f(20);
  const MutationOperator op = MutationOperator::parse("unif1", 20);
  StopCondition stop;
  stop.max_evaluations = 1000000;
  stop.target_fitness = 20.0;
  const RunRecord rec = run_opo_ea(f, op, stop, 11);
  CHECK(rec.final_fitness == 20.0);
  CHECK(rec.evaluations_used < 1000000);
}

TEST_CASE("solves onemax well within a generous budget") {
  OneMax f(20);
  const MutationOperator op = MutationOperator::parse("pmut:1.5", 20);
  int solved = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    StopCondition stop;
    stop.max_evaluations = 100000;
    stop.target_fitness = 20.0;
    solved += run_opo_ea(f, op, stop, seed).final_fitness == 20.0;
  }
  CHECK(solved >= 99);
}

TEST_CASE("explicit init is honored and equal fitness replaces the parent") {
  // Two-point plateau: both strings score 1, everything else 0. Starting at
  // `a`, a same-fitness move to `b` must be acceptable (plateau drift).
  const BitString a = BitString::from_string("1100");
  const BitString b = BitString::from_string("0011");
  testing::LambdaSetFunction plateau(4, [&](const BitString& s) {
    return (s == a || s == b) ? 1.0 : 0.0;
  });
  const MutationOperator op = MutationOperator::pmut(4, 1.5);
  StopCondition stop;
  stop.max_evaluations = 4000;
  const RunRecord rec = run_opo_ea(plateau, op, stop, 21, &a);
  CHECK(rec.improvements.size() == 1);
  CHECK(rec.improvements[0].second == 1.0);
  CHECK(rec.final_fitness == 1.0);
  // With 4000 four-bit mutations the all-flip move a -> b occurs w.h.p.; if
  // equal-fitness offspring were rejected the final solution could only be a.
  bool visited_b = rec.final_solution == b;
  CHECK((rec.final_solution == a || visited_b));
}

TEST_CASE("a stop condition must set at least one bound") {
  OneMax f(8);
  const MutationOperator op = MutationOperator::pmut(8, 1.5);
  CHECK_THROWS_AS(run_opo_ea(f, op, StopCondition{}, 1), std::invalid_argument);
  StopCondition target_only;
  target_only.target_fitness = 8.0;
  CHECK(run_opo_ea(f, op, target_only, 1).final_fitness == 8.0);
}

TEST_CASE("mismatched lengths are rejected") {
  OneMax f(10);
  const MutationOperator op = MutationOperator::pmut(12, 1.5);
  StopCondition stop;
  stop.max_evaluations = 10;
  CHECK_THROWS_AS(run_opo_ea(f, op, stop, 1), std::invalid_argument);

  const MutationOperator ok = MutationOperator::pmut(10, 1.5);
  const BitString bad_init(11);
  CHECK_THROWS_AS(run_opo_ea(f, ok, stop, 1, &bad_init), std::invalid_argument);
}

TEST_CASE("evaluation accounting is exact") {
  OneMax f(8);
  const MutationOperator op = MutationOperator::parse("unif:1", 8);
  StopCondition stop;
  stop.max_evaluations = 123;
  uint64_t last_index = 0;
  StepObserver obs = [&](uint64_t idx, double) {
    CHECK(idx == last_index + 1);
    last_index = idx;
  };
  const RunRecord rec = run_opo_ea(f, op, stop, 3, nullptr, &obs);
  CHECK(rec.evaluations_used == 123);
  CHECK(last_index == 123);
}

TEST_SUITE_END();
