#pragma once

#include <json.hpp>

#include "calgame/config.hpp"
#include "calgame/grid.hpp"

namespace calgame::detail {

using OrderedJson = nlohmann::ordered_json;

inline OrderedJson probability_json(Forecast f) { return f.value(); }

OrderedJson config_to_json(const ScenarioConfig& config);

}  // namespace calgame::detail
