#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "calgame/engine.hpp"
#include "calgame/errors.hpp"
#include "test_support.hpp"

namespace calgame {
namespace {

const ProbabilityGrid kGrid(11);

TEST(RunRound, MachineFirstOakes) {
  const auto config = testing::machine_first_config(OakesAdversary{}, kGrid.snap(0.3));
  const auto r = run_round(config, History{}, 0, 0);
  EXPECT_EQ(r.forecast, kGrid.snap(0.3));
  EXPECT_EQ(r.true_prob, kGrid.snap(0.8));
  EXPECT_TRUE(r.selected);
  EXPECT_EQ(r.move_order, MoveOrder::MachineFirst);
}

TEST(RunRound, NatureFirstMimicAlwaysMatches) {
  auto config = testing::machine_first_config(TruthfulRevealer{{kGrid.snap(0.6)}}, kGrid.snap(0.6));
  config.move_order = MoveOrder::NatureFirst;
  config.forecaster = Mimic{};
  const auto trace = run_replication(config, 0);
  for (const auto& r : trace.records()) {
    EXPECT_EQ(r.forecast, kGrid.snap(0.6));
    EXPECT_EQ(r.true_prob, r.forecast);
    EXPECT_TRUE(r.matched());
  }
}

TEST(RunRound, SimultaneousUniformMixMatchesAtRateOneOverG) {
  auto config = testing::machine_first_config(UniformlyPerverse{}, kGrid.snap(0.3), 10000);
  config.move_order = MoveOrder::Simultaneous;
  const auto trace = run_replication(config, 0);
  std::int64_t matches = 0;
  for (const auto& r : trace.records()) matches += r.true_prob == kGrid.snap(0.3);
  EXPECT_NEAR(static_cast<double>(matches) / 10000.0, 1.0 / 11.0, 0.01);
}

TEST(RunReplication, DeterministicForFixedInputs) {
  auto config = testing::machine_first_config(Iid{kGrid.snap(0.4)}, kGrid.snap(0.4), 5000);
  config.forecaster = EmpiricalFrequency{};
  EXPECT_EQ(run_replication(config, 3), run_replication(config, 3));
}

TEST(RunReplication, DistinctIndicesGiveDistinctPaths) {
  // Two independent Bernoulli(0.5) paths of length 1000 coincide with
  // probability 2^-1000.
  const auto config = testing::machine_first_config(Iid{kGrid.snap(0.5)}, kGrid.snap(0.5));
  const auto a = run_replication(config, 0);
  const auto b = run_replication(config, 1);
  int differing = 0;
  for (std::size_t t = 0; t < a.size(); ++t) differing += a[t].outcome != b[t].outcome;
  EXPECT_GT(differing, 0);
}

TEST(RunReplication, ZeroRoundsIsEmpty) {
  const auto config = testing::machine_first_config(Iid{kGrid.snap(0.5)}, kGrid.snap(0.5), 0);
  EXPECT_TRUE(run_replication(config, 0).empty());
}

TEST(RunReplication, RoundsAreConsecutiveAndOnGrid) {
  auto config = testing::machine_first_config(UniformlyPerverse{}, kGrid.snap(0.7), 3000);
  config.forecaster = EmpiricalFrequency{};
  const auto trace = run_replication(config, 0);
  for (std::size_t t = 0; t < trace.size(); ++t) {
    EXPECT_EQ(trace[t].t, static_cast<Round>(t));
    EXPECT_TRUE(kGrid.owns(trace[t].forecast));
    EXPECT_TRUE(kGrid.owns(trace[t].true_prob));
    EXPECT_EQ(trace[t].selected, trace[t].forecast == kGrid.snap(0.7));
  }
}

TEST(RunExperiment, ParallelEqualsSerial) {
  auto config = testing::machine_first_config(UniformlyPerverse{}, kGrid.snap(0.3), 2000);
  config.move_order = MoveOrder::Simultaneous;
  config.replications = 16;
  const auto serial = run_experiment(config, 1);
  const auto parallel = run_experiment(config, 4);
  EXPECT_EQ(serial.traces, parallel.traces);
  EXPECT_EQ(summary_to_json(serial.summary), summary_to_json(parallel.summary));
  ASSERT_EQ(serial.traces.size(), 16u);
  for (std::size_t i = 0; i < serial.traces.size(); ++i) {
    EXPECT_EQ(serial.traces[i].replication_index(), static_cast<std::int64_t>(i));
    EXPECT_EQ(serial.traces[i].size(), 2000u);
  }
}

TEST(RunExperiment, ReplicationOrderDoesNotMatter) {
  auto config = testing::machine_first_config(Iid{kGrid.snap(0.2)}, kGrid.snap(0.2), 500);
  config.replications = 5;
  const auto result = run_experiment(config, 1);
  for (std::int64_t rep = 4; rep >= 0; --rep) {
    EXPECT_EQ(run_replication(config, rep), result.traces[static_cast<std::size_t>(rep)]);
  }
}

TEST(RunExperiment, RejectsInvalidConfigs) {
  auto config = testing::machine_first_config(OakesAdversary{}, kGrid.snap(0.3));
  config.move_order = MoveOrder::Simultaneous;
  EXPECT_THROW(run_experiment(config), ConfigError);
  config = testing::machine_first_config(Iid{kGrid.snap(0.3)}, kGrid.snap(0.3));
  config.burn_in = config.rounds;
  EXPECT_THROW(run_experiment(config), ConfigError);
  config.burn_in = 0;
  config.detection_window = config.rounds + 1;
  EXPECT_THROW(run_experiment(config), ConfigError);
  config = testing::machine_first_config(Iid{ProbabilityGrid(5).at(1)}, kGrid.snap(0.3));
  EXPECT_THROW(run_experiment(config), ConfigError);
}

// Pooling rounds by their true probability q, the outcome mean stays within
// 4 binomial standard errors of q.
TEST(RunExperiment, OutcomesFollowTheTrueProbability) {
  auto config = testing::machine_first_config(UniformlyPerverse{}, kGrid.snap(0.3), 20000);
  config.move_order = MoveOrder::Simultaneous;
  config.replications = 10;
  const auto result = run_experiment(config, 1);
  std::map<int, std::pair<std::int64_t, std::int64_t>> pooled;
  for (const auto& trace : result.traces) {
    for (const auto& r : trace.records()) {
      auto& [n, hits] = pooled[r.true_prob.index()];
      ++n;
      hits += r.outcome.y;
    }
  }
  for (const auto& [index, counts] : pooled) {
    const double q = kGrid.value(index);
    const double mean = static_cast<double>(counts.second) / static_cast<double>(counts.first);
    const double se = std::sqrt(q * (1.0 - q) / static_cast<double>(counts.first));
    EXPECT_LE(std::abs(mean - q), 4.0 * se + 1e-12) << "q=" << q;
  }
}

// Re-playing round t on the recorded prefix reproduces forecast, selection
// flag and everything else, however the rest of the path was altered.
TEST(Measurability, RoundsDependOnlyOnThePast) {
  std::mt19937_64 gen(31337);
  const NatureStrategy natures[] = {Iid{kGrid.snap(0.3)}, OakesAdversary{}, UniformlyPerverse{}};
  for (int trial = 0; trial < 200; ++trial) {
    auto config = testing::machine_first_config(natures[trial % 3], kGrid.snap(0.5), 200);
    config.forecaster = EmpiricalFrequency{};
    config.master_seed = gen();
    const auto trace = run_replication(config, trial);
    const auto t = static_cast<Round>(gen() % 200);
    const auto replay = run_round(config, History(trace.prefix(t)), t, trial);
    EXPECT_EQ(replay, trace[static_cast<std::size_t>(t)]);
  }
}

}  // namespace
}  // namespace calgame
