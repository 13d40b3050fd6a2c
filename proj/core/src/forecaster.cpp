#include "calgame/forecaster.hpp"

#include <cmath>
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

}  // namespace

std::string_view forecaster_kind(const ForecasterStrategy& strategy) {
  return std::visit(Overloaded{
                        [](const Constant&) { return std::string_view("constant"); },
                        [](const EmpiricalFrequency&) {
                          return std::string_view("empirical_frequency");
                        },
                        [](const Mimic&) { return std::string_view("mimic"); },
                    },
                    strategy);
}

void validate(const ForecasterStrategy& strategy, const ProbabilityGrid& grid, MoveOrder order) {
  std::visit(Overloaded{
                 [&](const Constant& s) {
                   if (!grid.owns(s.alpha)) {
                     throw ConfigError("constant forecast is not on the scenario grid");
                   }
                 },
                 [&](const EmpiricalFrequency& s) {
                   const double a = s.prior_successes;
                   const double b = s.prior_trials;
                   if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0 || a > b) {
                     throw ConfigError("empirical frequency needs 0 <= a <= b");
                   }
                 },
                 [&](const Mimic&) {
                   if (order != MoveOrder::NatureFirst) {
                     throw ConfigError("mimic forecaster requires move order NatureFirst");
                   }
                 },
             },
             strategy);
}

Forecast decide_forecast(const ForecasterStrategy& strategy, const ProbabilityGrid& grid,
                         MoveOrder order, const History& history,
                         std::optional<Forecast> revealed_true_prob, Round t) {
  const bool nature_first = order == MoveOrder::NatureFirst;
  if (nature_first != revealed_true_prob.has_value()) {
    throw ContractViolation(nature_first
                                ? "NatureFirst round: the true probability must be revealed"
                                : std::string(to_string(order)) +
                                      " round: the true probability must stay hidden");
  }
  if (history.length() != t) {
    throw ContractViolation("forecast for round " + std::to_string(t) + " given " +
                            std::to_string(history.length()) + " rounds of history");
  }
  return std::visit(
      Overloaded{
          [&](const Constant& s) { return s.alpha; },
          [&](const EmpiricalFrequency& s) {
            const double denominator = s.prior_trials + t;
            if (denominator <= 0.0) return grid.snap(0.5);
            return grid.snap((s.prior_successes + static_cast<double>(history.hits())) /
                             denominator);
          },
          [&](const Mimic&) { return grid.snap(revealed_true_prob->value()); },
      },
      strategy);
}

}  // namespace calgame
