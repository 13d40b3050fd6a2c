#include "calgame/inference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "calgame/calibration.hpp"
#include "calgame/errors.hpp"

namespace calgame {
namespace {

bool deviates(const RoundRecord& r, Forecast alpha) { return r.true_prob != alpha; }

std::optional<Round> last_selected_deviation(const Trace& trace, Forecast alpha) {
  std::optional<Round> last;
  for (const auto& r : trace.records()) {
    if (selects(r.forecast, alpha) && deviates(r, alpha)) last = r.t;
  }
  return last;
}

}  // namespace

std::string_view to_string(SecondOrderClass c) {
  switch (c) {
    case SecondOrderClass::NatureFirstLike:
      return "NatureFirstLike";
    case SecondOrderClass::Interior:
      return "Interior";
    case SecondOrderClass::MachineFirstPerverseLike:
      return "MachineFirstPerverseLike";
  }
  return "?";
}

std::string_view to_string(PerversityVerdict v) {
  return v == PerversityVerdict::AtMostFinitelyOften ? "AtMostFinitelyOften"
                                                     : "PersistentlyDeviating";
}

std::string_view to_string(CannotLearnReason r) {
  switch (r) {
    case CannotLearnReason::UniformPerversity:
      return "UniformPerversity";
    case CannotLearnReason::NotSelfAssured:
      return "NotSelfAssured";
    case CannotLearnReason::FalseSelfAssurance:
      return "FalseSelfAssurance";
  }
  return "?";
}

CannotLearnReason parse_cannot_learn_reason(std::string_view name) {
  if (name == "UniformPerversity") return CannotLearnReason::UniformPerversity;
  if (name == "NotSelfAssured") return CannotLearnReason::NotSelfAssured;
  if (name == "FalseSelfAssurance") return CannotLearnReason::FalseSelfAssurance;
  throw DataIntegrityError("unknown cannot-learn reason '" + std::string(name) + "'");
}

SecondOrderThresholds SecondOrderThresholds::for_replications(std::int64_t replications) {
  const double half_step = 1.0 / (2.0 * static_cast<double>(std::max<std::int64_t>(1, replications)));
  return {1.0 - half_step, half_step};
}

SecondOrderEstimate estimate_second_order(std::span<const Trace> traces, Round t, Forecast alpha,
                                          std::optional<SecondOrderThresholds> thresholds) {
  if (traces.empty()) throw InsufficientDataError("second-order estimate over zero traces");
  std::int64_t matches = 0;
  for (const auto& trace : traces) {
    if (t < 0 || static_cast<std::size_t>(t) >= trace.size()) {
      throw DomainError("round " + std::to_string(t) + " outside replication " +
                        std::to_string(trace.replication_index()));
    }
    if (trace[static_cast<std::size_t>(t)].true_prob == alpha) ++matches;
  }
  const auto bounds =
      thresholds.value_or(SecondOrderThresholds::for_replications(std::ssize(traces)));
  SecondOrderEstimate estimate;
  estimate.t = t;
  estimate.alpha = alpha;
  estimate.fraction = static_cast<double>(matches) / static_cast<double>(traces.size());
  if (estimate.fraction >= bounds.one_at_least) {
    estimate.classification = SecondOrderClass::NatureFirstLike;
  } else if (estimate.fraction <= bounds.zero_at_most) {
    estimate.classification = SecondOrderClass::MachineFirstPerverseLike;
  } else {
    estimate.classification = SecondOrderClass::Interior;
  }
  return estimate;
}

double expected_abs_deviation(std::span<const Trace> traces, Forecast alpha) {
  if (traces.empty()) throw InsufficientDataError("expected deviation over zero traces");
  double total = 0.0;
  for (const auto& trace : traces) {
    CalibrationAccumulator acc(alpha);
    for (const auto& r : trace.records()) {
      if (selects(r.forecast, alpha)) {
        RoundRecord as_selected = r;
        as_selected.selected = true;
        acc.update(as_selected);
      }
    }
    if (acc.empty()) {
      throw EmptyTestSetError("replication " + std::to_string(trace.replication_index()) +
                              " has an empty test set for alpha = " + format_probability(alpha));
    }
    total += std::abs(acc.p_k() - alpha.value());
  }
  return total / static_cast<double>(traces.size());
}

PerversityReport detect_perversity(const Trace& trace, Forecast alpha, Round burn_in,
                                   Round window) {
  const auto horizon = static_cast<Round>(trace.size());
  if (window < 1 || burn_in < 0 || window > horizon - burn_in) {
    throw DomainError("detection window " + std::to_string(window) +
                      " does not fit after burn-in " + std::to_string(burn_in) + " of " +
                      std::to_string(horizon) + " rounds");
  }
  PerversityReport report;
  report.alpha = alpha;
  report.window = window;
  std::int64_t selected = 0;
  for (const auto& r : trace.records().subspan(static_cast<std::size_t>(burn_in))) {
    if (!selects(r.forecast, alpha)) continue;
    ++selected;
    if (deviates(r, alpha)) {
      ++report.deviation_count_post_burn_in;
      report.last_deviation_time = r.t;
      report.quiet_run = 0;
    } else {
      ++report.conform_count_post_burn_in;
      ++report.quiet_run;
    }
  }
  if (selected < window) {
    throw InsufficientDataError("replication " + std::to_string(trace.replication_index()) +
                                " selected " + std::to_string(selected) +
                                " rounds, fewer than the window " + std::to_string(window));
  }
  report.verdict = report.quiet_run >= window ? PerversityVerdict::AtMostFinitelyOften
                                              : PerversityVerdict::PersistentlyDeviating;
  return report;
}

std::optional<Round> estimate_stopping_time(std::span<const Trace> traces, Forecast alpha0,
                                            Round burn_in, Round window) {
  Round estimate = 0;
  for (const auto& trace : traces) {
    const auto report = detect_perversity(trace, alpha0, burn_in, window);
    if (report.verdict == PerversityVerdict::PersistentlyDeviating) return std::nullopt;
    if (auto last = last_selected_deviation(trace, alpha0)) {
      estimate = std::max(estimate, *last + 1);
    }
  }
  return estimate;
}

bool self_assurance(const PerversityReport& report, Round min_window) {
  return report.verdict == PerversityVerdict::AtMostFinitelyOften &&
         report.quiet_run >= min_window;
}

std::optional<Round> first_assurance_round(const Trace& trace, Forecast alpha, Round burn_in,
                                           Round min_window) {
  if (min_window < 1) throw DomainError("assurance window must be positive");
  std::int64_t run = 0;
  for (const auto& r : trace.records()) {
    if (r.t < burn_in || !selects(r.forecast, alpha)) continue;
    run = deviates(r, alpha) ? 0 : run + 1;
    if (run >= min_window) return r.t;
  }
  return std::nullopt;
}

std::int64_t deviations_after(const Trace& trace, Forecast alpha, Round after) {
  std::int64_t count = 0;
  for (const auto& r : trace.records()) {
    if (r.t > after && selects(r.forecast, alpha) && deviates(r, alpha)) ++count;
  }
  return count;
}

double population_empirical(std::span<const Outcome> outcomes) {
  if (outcomes.empty()) throw InsufficientDataError("empty population");
  std::int64_t hits = 0;
  for (auto o : outcomes) hits += o.y;
  return static_cast<double>(hits) / static_cast<double>(outcomes.size());
}

std::vector<Outcome> selected_outcomes_from(const Trace& trace, Forecast alpha, Round from) {
  std::vector<Outcome> outcomes;
  for (const auto& r : trace.records()) {
    if (r.t >= from && selects(r.forecast, alpha)) outcomes.push_back(r.outcome);
  }
  return outcomes;
}

AlphaAnalysis analyze_alpha(std::span<const Trace> traces, Forecast alpha, Round burn_in,
                            Round window, Round min_window) {
  if (traces.empty()) throw InsufficientDataError("analysis over zero traces");
  AlphaAnalysis a;
  a.alpha = alpha;
  a.persistent = false;
  a.self_assured = true;
  std::int64_t wins = 0;
  std::int64_t rounds = 0;
  for (const auto& trace : traces) {
    const auto report = detect_perversity(trace, alpha, burn_in, window);
    a.deviations += report.deviation_count_post_burn_in;
    if (report.last_deviation_time &&
        (!a.last_deviation || *report.last_deviation_time > *a.last_deviation)) {
      a.last_deviation = report.last_deviation_time;
    }
    if (report.verdict == PerversityVerdict::PersistentlyDeviating) a.persistent = true;
    if (!self_assurance(report, min_window)) a.self_assured = false;
    if (auto assured_at = first_assurance_round(trace, alpha, burn_in, min_window)) {
      if (deviations_after(trace, alpha, *assured_at) > 0) a.false_assurance = true;
    }
    for (const auto& r : trace.records()) wins += r.matched() ? 1 : 0;
    rounds += std::ssize(trace.records());
  }
  a.win_rate = rounds > 0 ? static_cast<double>(wins) / static_cast<double>(rounds) : 0.0;
  if (!a.persistent) {
    a.stopping_time = estimate_stopping_time(traces, alpha, burn_in, window);
    for (const auto& trace : traces) {
      for (auto o : selected_outcomes_from(trace, alpha, *a.stopping_time)) {
        ++a.post_stop_count;
        a.post_stop_hits += o.y;
      }
    }
  }
  return a;
}

Verdict learnability_verdict(std::span<const AlphaAnalysis> analyses, const ProbabilityGrid& grid) {
  if (analyses.empty()) throw InsufficientDataError("verdict needs at least one alpha");
  for (const auto& a : analyses) {
    const std::string which = "alpha = " + format_probability(a.alpha);
    if (a.persistent == a.stopping_time.has_value()) {
      throw DataIntegrityError(which + " is both persistent and stopped, or neither");
    }
    if (a.persistent && a.self_assured) {
      throw DataIntegrityError(which + " is self-assured while still deviating");
    }
  }
  std::vector<const AlphaAnalysis*> assured;
  bool any_stopped = false;
  for (const auto& a : analyses) {
    if (a.persistent) continue;
    any_stopped = true;
    if (a.self_assured) assured.push_back(&a);
  }
  if (!any_stopped) return CannotLearn{CannotLearnReason::UniformPerversity};
  if (assured.empty()) return CannotLearn{CannotLearnReason::NotSelfAssured};
  for (const AlphaAnalysis* a : assured) {
    if (a->false_assurance) continue;
    if (a->post_stop_count == 0) {
      throw InsufficientDataError("no outcomes after the stopping time for alpha = " +
                                  format_probability(a->alpha));
    }
    const Forecast learned = grid.snap(static_cast<double>(a->post_stop_hits) /
                                       static_cast<double>(a->post_stop_count));
    if (!grid.owns(a->alpha) || learned != a->alpha) {
      throw DataIntegrityError("learned value " + format_probability(learned) +
                               " differs from the conforming forecast " +
                               format_probability(a->alpha));
    }
    return CanLearn{a->alpha, learned};
  }
  return CannotLearn{CannotLearnReason::FalseSelfAssurance};
}

WinningVsLearning winning_vs_learning_demo(const Trace& trace, Forecast alpha, Round burn_in,
                                           Round window) {
  WinningVsLearning demo;
  demo.report = detect_perversity(trace, alpha, burn_in, window);
  for (const auto& r : trace.records()) {
    ++demo.rounds;
    if (r.matched()) ++demo.wins;
  }
  demo.win_rate = demo.rounds > 0
                      ? static_cast<double>(demo.wins) / static_cast<double>(demo.rounds)
                      : 0.0;
  return demo;
}

}  // namespace calgame
