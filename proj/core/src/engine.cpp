#include "calgame/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "calgame/calibration.hpp"
#include "calgame/errors.hpp"
#include "calgame/rng.hpp"

namespace calgame {

void validate_game(const ScenarioConfig& config) {
  validate(config.nature, config.grid, config.move_order);
  validate(config.forecaster, config.grid, config.move_order);
  if (!config.grid.owns(config.assessed_alpha)) {
    throw ConfigError("assessed_alpha is not on the scenario grid");
  }
}

void validate(const ScenarioConfig& config) {
  validate_game(config);
  if (config.rounds <= 0) throw ConfigError("rounds must be positive");
  if (config.replications <= 0) throw ConfigError("replications must be positive");
  if (config.burn_in < 0 || config.burn_in >= config.rounds) {
    throw ConfigError("burn_in must satisfy 0 <= burn_in < rounds");
  }
  if (config.detection_window < 1 || config.detection_window > config.rounds - config.burn_in) {
    throw ConfigError("detection_window must be in [1, rounds - burn_in]");
  }
  if (config.assurance_window < 1) throw ConfigError("assurance_window must be positive");
  if (!(config.confidence > 0.0 && config.confidence < 1.0)) {
    throw ConfigError("confidence must be in (0, 1)");
  }
  for (Round t : config.second_order_times) {
    if (t < 0 || t >= config.rounds) {
      throw ConfigError("second_order_times entry " + std::to_string(t) + " outside [0, rounds)");
    }
  }
}

RoundRecord run_round(const ScenarioConfig& config, const History& history, Round t,
                      std::int64_t replication) {
  const auto rep = static_cast<std::uint64_t>(replication);
  const auto round = static_cast<std::uint64_t>(t);
  RngStream nature_stream(config.master_seed, rep, round, StreamTag::Nature);

  RoundRecord record;
  record.t = t;
  record.move_order = config.move_order;
  switch (config.move_order) {
    case MoveOrder::MachineFirst:
      record.forecast = decide_forecast(config.forecaster, config.grid, config.move_order,
                                        history, std::nullopt, t);
      record.true_prob = decide_true_prob(config.nature, config.grid, config.move_order, history,
                                          record.forecast, t, nature_stream);
      break;
    case MoveOrder::NatureFirst:
      record.true_prob = decide_true_prob(config.nature, config.grid, config.move_order, history,
                                          std::nullopt, t, nature_stream);
      record.forecast = decide_forecast(config.forecaster, config.grid, config.move_order,
                                        history, record.true_prob, t);
      break;
    case MoveOrder::Simultaneous:
      record.forecast = decide_forecast(config.forecaster, config.grid, config.move_order,
                                        history, std::nullopt, t);
      record.true_prob = decide_true_prob(config.nature, config.grid, config.move_order, history,
                                          std::nullopt, t, nature_stream);
      break;
  }
  record.selected = selects(record.forecast, config.assessed_alpha);

  RngStream outcome_stream(config.master_seed, rep, round, StreamTag::Outcome);
  record.outcome = bernoulli(record.true_prob, outcome_stream);
  return record;
}

Trace run_replication(const ScenarioConfig& config, std::int64_t replication) {
  validate_game(config);
  Trace trace(config.master_seed, replication);
  const Round rounds = std::max<Round>(config.rounds, 0);
  trace.reserve(static_cast<std::size_t>(rounds));
  std::int64_t hits = 0;
  for (Round t = 0; t < rounds; ++t) {
    const auto record =
        run_round(config, History::with_hits(trace.records(), hits), t, replication);
    hits += record.outcome.y;
    trace.append(record);
  }
  return trace;
}

ExperimentResult run_experiment(const ScenarioConfig& config, unsigned threads) {
  validate(config);
  const auto replications = static_cast<std::size_t>(config.replications);
  ExperimentResult result;
  result.traces.resize(replications);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, replications));

  std::vector<std::exception_ptr> errors(replications);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < replications; i = next++) {
      try {
        result.traces[i] = run_replication(config, static_cast<std::int64_t>(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  result.summary = summarize(config, result.traces);
  return result;
}

}  // namespace calgame
