#pragma once

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "calgame/grid.hpp"
#include "calgame/record.hpp"
#include "calgame/rng.hpp"

namespace calgame {

// How a perverse Nature moves away from a forecast she has observed.
enum class PerverseRule {
  OakesMap,     // f(x) = x + 1/2 on [0, 1/2], 1 - x on (1/2, 1]
  MaxDistance,  // the grid endpoint farthest from x, ties toward 0
};

std::string_view to_string(PerverseRule rule);
PerverseRule parse_perverse_rule(std::string_view name);

struct Iid {
  Forecast p;
  friend bool operator==(const Iid&, const Iid&) = default;
};

// Nature answers every forecast with f(forecast); needs MachineFirst.
struct OakesAdversary {
  friend bool operator==(const OakesAdversary&, const OakesAdversary&) = default;
};

struct UniformlyPerverse {
  PerverseRule machine_first_rule = PerverseRule::OakesMap;
  // Weight per grid index used when Nature cannot see the forecast.
  // Empty means uniform over the grid.
  std::vector<double> simultaneous_mix;
  friend bool operator==(const UniformlyPerverse&, const UniformlyPerverse&) = default;
};

// Perverse toward every forecast except `favored`. Toward `favored` she
// starts perverse and toggles at each entry of `flip_schedule` (or every
// `flip_period` rounds); from `stopping_time` on she conforms for good.
// Without a stopping time the toggling never ends.
struct SelectivelyPerverse {
  Forecast favored;
  std::optional<Round> stopping_time;
  std::vector<Round> flip_schedule;
  std::optional<Round> flip_period;
  PerverseRule off_favored_rule = PerverseRule::OakesMap;

  bool conforming_at(Round t) const;
  friend bool operator==(const SelectivelyPerverse&, const SelectivelyPerverse&) = default;
};

// Emits schedule[t mod size]; under NatureFirst the value is shown to the
// machine before it moves.
struct TruthfulRevealer {
  std::vector<Forecast> schedule;

  Forecast at(Round t) const { return schedule[static_cast<std::size_t>(t) % schedule.size()]; }
  friend bool operator==(const TruthfulRevealer&, const TruthfulRevealer&) = default;
};

using NatureStrategy =
    std::variant<Iid, OakesAdversary, UniformlyPerverse, SelectivelyPerverse, TruthfulRevealer>;

std::string_view nature_kind(const NatureStrategy& strategy);

// Throws ConfigError if the grid cannot represent 1/2.
Forecast oakes_map(Forecast x);
Forecast max_distance(Forecast x);
Forecast perverse_response(PerverseRule rule, Forecast observed);

// Checks grid membership, the Oakes grid requirement and the move orders
// each variant can play under. Throws ConfigError.
void validate(const NatureStrategy& strategy, const ProbabilityGrid& grid, MoveOrder order);

// Nature's true probability for round t. `observed_forecast` must be
// present exactly when the machine moves first; otherwise
// ContractViolation is thrown.
Forecast decide_true_prob(const NatureStrategy& strategy, const ProbabilityGrid& grid,
                          MoveOrder order, const History& history,
                          std::optional<Forecast> observed_forecast, Round t,
                          RngStream& stream);

}  // namespace calgame
