#pragma once

#include <cstdint>
#include <vector>

#include "calgame/config.hpp"
#include "calgame/record.hpp"
#include "calgame/summary.hpp"

namespace calgame {

// Plays round t on top of `history` (rounds 0..t-1). Randomness comes only
// from streams keyed by (master_seed, replication, t, tag), so re-running a
// round on the same prefix reproduces it whatever happened afterwards.
RoundRecord run_round(const ScenarioConfig& config, const History& history, Round t,
                      std::int64_t replication);

Trace run_replication(const ScenarioConfig& config, std::int64_t replication);

struct ExperimentResult {
  std::vector<Trace> traces;
  ExperimentSummary summary;
};

// Runs all replications, using up to `threads` workers (0 = hardware
// concurrency). The result does not depend on the thread count.
ExperimentResult run_experiment(const ScenarioConfig& config, unsigned threads = 0);

}  // namespace calgame
