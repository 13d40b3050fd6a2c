#include "calgame/nature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "calgame/errors.hpp"

namespace calgame {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_half(const ProbabilityGrid& grid, std::string_view who) {
  if (!grid.has_half()) {
    throw ConfigError(std::string(who) + " needs 1/2 on the grid (odd resolution), got " +
                      std::to_string(grid.resolution()) + " points");
  }
}

void require_order(MoveOrder actual, MoveOrder wanted, std::string_view who) {
  if (actual != wanted) {
    throw ConfigError(std::string(who) + " requires move order " +
                      std::string(to_string(wanted)) + ", got " +
                      std::string(to_string(actual)));
  }
}

void require_on_grid(Forecast f, const ProbabilityGrid& grid, std::string_view what) {
  if (!grid.owns(f)) throw ConfigError(std::string(what) + " is not on the scenario grid");
}

Forecast draw_from_mix(const std::vector<double>& mix, const ProbabilityGrid& grid,
                       RngStream& stream) {
  const double u = stream.uniform();
  if (mix.empty()) {
    auto index = static_cast<int>(u * grid.resolution());
    return grid.at(std::min(index, grid.last_index()));
  }
  const double total = std::accumulate(mix.begin(), mix.end(), 0.0);
  const double target = u * total;
  double cumulative = 0.0;
  int last_positive = 0;
  for (int i = 0; i < static_cast<int>(mix.size()); ++i) {
    if (mix[i] <= 0.0) continue;
    cumulative += mix[i];
    last_positive = i;
    if (target < cumulative) return grid.at(i);
  }
  return grid.at(last_positive);
}

Forecast require_observed(std::optional<Forecast> observed, std::string_view who) {
  if (!observed) {
    throw ContractViolation(std::string(who) + " must observe the machine's forecast");
  }
  return *observed;
}

}  // namespace

std::string_view to_string(PerverseRule rule) {
  return rule == PerverseRule::OakesMap ? "OakesMap" : "MaxDistance";
}

PerverseRule parse_perverse_rule(std::string_view name) {
  if (name == "OakesMap") return PerverseRule::OakesMap;
  if (name == "MaxDistance") return PerverseRule::MaxDistance;
  throw ConfigError("unknown perverse rule '" + std::string(name) + "'");
}

bool SelectivelyPerverse::conforming_at(Round t) const {
  if (stopping_time && t >= *stopping_time) return true;
  std::int64_t toggles = 0;
  if (flip_period) {
    toggles = t / *flip_period;
  } else {
    toggles = std::upper_bound(flip_schedule.begin(), flip_schedule.end(), t) -
              flip_schedule.begin();
  }
  return toggles % 2 == 1;
}

std::string_view nature_kind(const NatureStrategy& strategy) {
  return std::visit(Overloaded{
                        [](const Iid&) { return std::string_view("iid"); },
                        [](const OakesAdversary&) { return std::string_view("oakes"); },
                        [](const UniformlyPerverse&) {
                          return std::string_view("uniformly_perverse");
                        },
                        [](const SelectivelyPerverse&) {
                          return std::string_view("selectively_perverse");
                        },
                        [](const TruthfulRevealer&) {
                          return std::string_view("truthful_revealer");
                        },
                    },
                    strategy);
}

Forecast oakes_map(Forecast x) {
  const int n = x.last_index();
  if (n % 2 != 0) {
    throw ConfigError("Oakes map needs 1/2 on the grid (odd resolution)");
  }
  const int half = n / 2;
  const int i = x.index();
  const int image = i <= half ? i + half : n - i;
  return Forecast(static_cast<std::uint16_t>(image), x.last_index());
}

Forecast max_distance(Forecast x) {
  const int n = x.last_index();
  const int i = x.index();
  // distance to 0 is i, to 1 is n - i
  return n - i > i ? Forecast(x.last_index(), x.last_index()) : Forecast(0, x.last_index());
}

Forecast perverse_response(PerverseRule rule, Forecast observed) {
  return rule == PerverseRule::OakesMap ? oakes_map(observed) : max_distance(observed);
}

void validate(const NatureStrategy& strategy, const ProbabilityGrid& grid, MoveOrder order) {
  std::visit(
      Overloaded{
          [&](const Iid& s) { require_on_grid(s.p, grid, "iid p"); },
          [&](const OakesAdversary&) {
            require_half(grid, "Oakes adversary");
            require_order(order, MoveOrder::MachineFirst, "Oakes adversary");
          },
          [&](const UniformlyPerverse& s) {
            if (s.machine_first_rule == PerverseRule::OakesMap &&
                order == MoveOrder::MachineFirst) {
              require_half(grid, "uniformly perverse Nature with the Oakes rule");
            }
            if (!s.simultaneous_mix.empty()) {
              if (static_cast<int>(s.simultaneous_mix.size()) != grid.resolution()) {
                throw ConfigError("simultaneous_mix needs one weight per grid point");
              }
              double total = 0.0;
              for (double w : s.simultaneous_mix) {
                if (!(w >= 0.0) || !std::isfinite(w)) {
                  throw ConfigError("simultaneous_mix weights must be finite and >= 0");
                }
                total += w;
              }
              if (!(total > 0.0)) throw ConfigError("simultaneous_mix has zero total weight");
            }
          },
          [&](const SelectivelyPerverse& s) {
            require_on_grid(s.favored, grid, "favored forecast");
            require_order(order, MoveOrder::MachineFirst, "selectively perverse Nature");
            if (s.off_favored_rule == PerverseRule::OakesMap) {
              require_half(grid, "selectively perverse Nature with the Oakes rule");
            }
            if (s.stopping_time && *s.stopping_time < 0) {
              throw ConfigError("stopping_time must be >= 0");
            }
            if (s.flip_period && !s.flip_schedule.empty()) {
              throw ConfigError("give either flip_schedule or flip_period, not both");
            }
            if (s.flip_period && *s.flip_period <= 0) {
              throw ConfigError("flip_period must be positive");
            }
            for (std::size_t i = 0; i < s.flip_schedule.size(); ++i) {
              const Round f = s.flip_schedule[i];
              if (f < 0 || (i > 0 && f <= s.flip_schedule[i - 1])) {
                throw ConfigError("flip_schedule must be strictly increasing and >= 0");
              }
              if (s.stopping_time && f >= *s.stopping_time) {
                throw ConfigError("flip_schedule entries must precede stopping_time");
              }
            }
          },
          [&](const TruthfulRevealer& s) {
            if (s.schedule.empty()) throw ConfigError("truthful revealer schedule is empty");
            for (auto p : s.schedule) require_on_grid(p, grid, "revealer schedule value");
          },
      },
      strategy);
}

Forecast decide_true_prob(const NatureStrategy& strategy, const ProbabilityGrid& grid,
                          MoveOrder order, const History& /*history*/,
                          std::optional<Forecast> observed_forecast, Round t,
                          RngStream& stream) {
  const bool machine_first = order == MoveOrder::MachineFirst;
  if (machine_first != observed_forecast.has_value()) {
    throw ContractViolation(
        machine_first ? "MachineFirst round: Nature must be shown the forecast"
                      : std::string(to_string(order)) +
                            " round: Nature must not see the current forecast");
  }
  return std::visit(
      Overloaded{
          [&](const Iid& s) { return s.p; },
          [&](const OakesAdversary&) {
            return oakes_map(require_observed(observed_forecast, "Oakes adversary"));
          },
          [&](const UniformlyPerverse& s) {
            if (observed_forecast) return perverse_response(s.machine_first_rule, *observed_forecast);
            return draw_from_mix(s.simultaneous_mix, grid, stream);
          },
          [&](const SelectivelyPerverse& s) {
            const Forecast seen = require_observed(observed_forecast, "selectively perverse Nature");
            if (seen == s.favored && s.conforming_at(t)) return s.favored;
            return perverse_response(s.off_favored_rule, seen);
          },
          [&](const TruthfulRevealer& s) { return s.at(t); },
      },
      strategy);
}

}  // namespace calgame
