#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "calgame/forecaster.hpp"
#include "calgame/grid.hpp"
#include "calgame/nature.hpp"
#include "calgame/record.hpp"

namespace calgame {

struct ScenarioConfig {
  std::string name = "scenario";
  ProbabilityGrid grid{11};
  NatureStrategy nature = Iid{};
  ForecasterStrategy forecaster = Constant{};
  MoveOrder move_order = MoveOrder::MachineFirst;
  Round rounds = 1000;
  std::int64_t replications = 1;
  std::uint64_t master_seed = 0;
  // Selection criterion: round t is in the test set iff forecast == alpha.
  Forecast assessed_alpha;
  Round burn_in = 0;
  Round detection_window = 100;
  // Trailing deviation-free run the machine needs before it is self-assured.
  Round assurance_window = 100;
  double confidence = 0.999;
  // Rounds at which second-order fractions are reported; empty picks
  // first, middle and last.
  std::vector<Round> second_order_times;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// Strategy/grid/move-order compatibility. Throws ConfigError.
void validate_game(const ScenarioConfig& config);

// validate_game plus the horizon: rounds > burn_in, replications >= 1,
// 1 <= detection_window <= rounds - burn_in, and so on.
void validate(const ScenarioConfig& config);

}  // namespace calgame
