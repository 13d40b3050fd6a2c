#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include "calgame/grid.hpp"
#include "calgame/record.hpp"

namespace calgame {

struct Constant {
  Forecast alpha;
  friend bool operator==(const Constant&, const Constant&) = default;
};

// Smoothed running frequency (a + hits) / (b + rounds), snapped to the grid.
// a = b = 0 is allowed and forecasts the grid midpoint until the first
// outcome arrives.
struct EmpiricalFrequency {
  double prior_successes = 1.0;
  double prior_trials = 2.0;
  friend bool operator==(const EmpiricalFrequency&, const EmpiricalFrequency&) = default;
};

// Copies the true probability Nature revealed (NatureFirst only).
struct Mimic {
  friend bool operator==(const Mimic&, const Mimic&) = default;
};

using ForecasterStrategy = std::variant<Constant, EmpiricalFrequency, Mimic>;

std::string_view forecaster_kind(const ForecasterStrategy& strategy);

// Throws ConfigError.
void validate(const ForecasterStrategy& strategy, const ProbabilityGrid& grid, MoveOrder order);

// Forecast for round t from rounds 0..t-1 only. `revealed_true_prob` must be
// present exactly under NatureFirst, else ContractViolation.
Forecast decide_forecast(const ForecasterStrategy& strategy, const ProbabilityGrid& grid,
                         MoveOrder order, const History& history,
                         std::optional<Forecast> revealed_true_prob, Round t);

}  // namespace calgame
