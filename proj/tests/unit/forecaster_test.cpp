#include <gtest/gtest.h>

#include <random>

#include "calgame/engine.hpp"
#include "calgame/errors.hpp"
#include "calgame/forecaster.hpp"
#include "test_support.hpp"

namespace calgame {
namespace {

const ProbabilityGrid kGrid(11);

Trace outcomes_trace(std::initializer_list<int> ys) {
  Trace trace;
  Round t = 0;
  for (int y : ys) {
    RoundRecord r;
    r.t = t++;
    r.forecast = kGrid.snap(0.5);
    r.true_prob = kGrid.snap(0.5);
    r.outcome.y = static_cast<std::uint8_t>(y);
    trace.append(r);
  }
  return trace;
}

TEST(DecideForecast, Constant) {
  const auto trace = outcomes_trace({1, 1, 0, 1});
  EXPECT_EQ(decide_forecast(Constant{kGrid.snap(0.3)}, kGrid, MoveOrder::MachineFirst,
                            History(trace.records()), std::nullopt, 4),
            kGrid.snap(0.3));
}

TEST(DecideForecast, EmpiricalFrequencyArithmetic) {
  // (1 + 2) / (2 + 3) = 0.6
  const auto trace = outcomes_trace({1, 0, 1});
  EXPECT_EQ(decide_forecast(EmpiricalFrequency{1.0, 2.0}, kGrid, MoveOrder::MachineFirst,
                            History(trace.records()), std::nullopt, 3),
            kGrid.snap(0.6));
  EXPECT_EQ(decide_forecast(EmpiricalFrequency{1.0, 2.0}, kGrid, MoveOrder::MachineFirst,
                            History{}, std::nullopt, 0),
            kGrid.snap(0.5));
}

TEST(DecideForecast, UnsmoothedFrequencyStartsAtMidpoint) {
  const EmpiricalFrequency raw{0.0, 0.0};
  validate(ForecasterStrategy{raw}, kGrid, MoveOrder::MachineFirst);
  EXPECT_EQ(decide_forecast(raw, kGrid, MoveOrder::MachineFirst, History{}, std::nullopt, 0),
            kGrid.snap(0.5));
  const auto trace = outcomes_trace({1, 1, 1, 0});
  EXPECT_EQ(decide_forecast(raw, kGrid, MoveOrder::MachineFirst, History(trace.records()),
                            std::nullopt, 4),
            kGrid.snap(0.75));
}

TEST(DecideForecast, MimicCopiesRevealedProbability) {
  EXPECT_EQ(decide_forecast(Mimic{}, kGrid, MoveOrder::NatureFirst, History{}, kGrid.snap(0.8), 0),
            kGrid.snap(0.8));
}

TEST(DecideForecast, RevelationMustMatchMoveOrder) {
  EXPECT_THROW(decide_forecast(Mimic{}, kGrid, MoveOrder::NatureFirst, History{}, std::nullopt, 0),
               ContractViolation);
  EXPECT_THROW(decide_forecast(Constant{kGrid.snap(0.3)}, kGrid, MoveOrder::MachineFirst,
                               History{}, kGrid.snap(0.3), 0),
               ContractViolation);
  EXPECT_THROW(validate(ForecasterStrategy{Mimic{}}, kGrid, MoveOrder::MachineFirst), ConfigError);
  EXPECT_THROW(validate(ForecasterStrategy{EmpiricalFrequency{3.0, 2.0}}, kGrid,
                        MoveOrder::MachineFirst),
               ConfigError);
}

TEST(DecideForecast, HistoryLengthMustEqualRound) {
  const auto trace = outcomes_trace({1, 0});
  EXPECT_THROW(decide_forecast(Constant{kGrid.snap(0.3)}, kGrid, MoveOrder::MachineFirst,
                               History(trace.records()), std::nullopt, 5),
               ContractViolation);
}

// Two histories that agree on rounds 0..t-1 but differ afterwards must give
// the same forecast at t.
TEST(DecideForecast, NoLookaheadUnderMutatedFutures) {
  std::mt19937_64 gen(2718);
  const ForecasterStrategy strategies[] = {Constant{kGrid.snap(0.4)},
                                           EmpiricalFrequency{1.0, 2.0},
                                           EmpiricalFrequency{0.0, 0.0}};
  for (int trial = 0; trial < 1000; ++trial) {
    const auto original = testing::random_trace(gen, kGrid, kGrid.snap(0.4), 60);
    Trace mutated(original.master_seed(), 0);
    const auto t = static_cast<Round>(gen() % 60);
    for (const auto& r : original.records()) {
      RoundRecord copy = r;
      if (r.t >= t) {
        copy.outcome.y ^= 1;
        copy.true_prob = kGrid.at(static_cast<int>(gen() % 11));
      }
      mutated.append(copy);
    }
    for (const auto& s : strategies) {
      EXPECT_EQ(decide_forecast(s, kGrid, MoveOrder::MachineFirst, History(original.prefix(t)),
                                std::nullopt, t),
                decide_forecast(s, kGrid, MoveOrder::MachineFirst, History(mutated.prefix(t)),
                                std::nullopt, t));
    }
  }
}

// Law of large numbers: after 1e5 rounds against Iid{0.3} the running
// frequency sits within 0.05 of 0.3 (sd ~0.0014), so the snapped forecast
// equals 0.3 in essentially every replication.
TEST(EmpiricalFrequency, ConvergesToTheIidProbability) {
  auto config = testing::machine_first_config(Iid{kGrid.snap(0.3)}, kGrid.snap(0.3), 100000);
  config.forecaster = EmpiricalFrequency{1.0, 2.0};
  config.replications = 20;
  int on_target = 0;
  for (std::int64_t rep = 0; rep < config.replications; ++rep) {
    const auto trace = run_replication(config, rep);
    if (trace.records().back().forecast == kGrid.snap(0.3)) ++on_target;
  }
  EXPECT_GE(static_cast<double>(on_target) / config.replications, 0.99);
}

}  // namespace
}  // namespace calgame
