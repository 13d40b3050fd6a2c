#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "calgame/grid.hpp"
#include "calgame/record.hpp"

namespace calgame {

// ---------------------------------------------------------------------------
// Second-order probability of the match event {true_prob_t == alpha},
// estimated across replications.

enum class SecondOrderClass { NatureFirstLike, Interior, MachineFirstPerverseLike };

std::string_view to_string(SecondOrderClass c);

struct SecondOrderThresholds {
  double one_at_least = 1.0;   // fraction >= this reads as probability one
  double zero_at_most = 0.0;   // fraction <= this reads as probability zero

  // 1 - 1/(2R) and 1/(2R): with R replications only exact 0 and 1 qualify.
  static SecondOrderThresholds for_replications(std::int64_t replications);
};

struct SecondOrderEstimate {
  Round t = 0;
  Forecast alpha;
  double fraction = 0.0;
  SecondOrderClass classification = SecondOrderClass::Interior;
};

// Throws DomainError if some trace has no record at t, InsufficientDataError
// for an empty set of traces.
SecondOrderEstimate estimate_second_order(std::span<const Trace> traces, Round t, Forecast alpha,
                                          std::optional<SecondOrderThresholds> thresholds = {});

// Mean over replications of |p_T - alpha|. Throws EmptyTestSetError naming
// the first replication whose test set is empty.
double expected_abs_deviation(std::span<const Trace> traces, Forecast alpha);

// ---------------------------------------------------------------------------
// Perversity along the test set of one replication. A deviation is a round
// with forecast == alpha whose true probability differs from alpha.

enum class PerversityVerdict { AtMostFinitelyOften, PersistentlyDeviating };

std::string_view to_string(PerversityVerdict v);

struct PerversityReport {
  Forecast alpha;
  std::int64_t deviation_count_post_burn_in = 0;
  std::int64_t conform_count_post_burn_in = 0;
  std::optional<Round> last_deviation_time;
  // Selected post-burn-in rounds after the last deviation (all of them if
  // there was none).
  std::int64_t quiet_run = 0;
  Round window = 0;
  PerversityVerdict verdict = PerversityVerdict::PersistentlyDeviating;
};

// AtMostFinitelyOften iff the final `window` selected post-burn-in rounds are
// deviation free. Throws DomainError if window > T - burn_in or window < 1,
// InsufficientDataError if fewer than `window` rounds were selected.
PerversityReport detect_perversity(const Trace& trace, Forecast alpha, Round burn_in,
                                   Round window);

// max over replications of 1 + (last selected round that deviated), 0 when
// none ever deviated, nullopt when any replication still deviates inside its
// final window.
std::optional<Round> estimate_stopping_time(std::span<const Trace> traces, Forecast alpha0,
                                            Round burn_in, Round window);

// A deviation-free trailing run of at least `min_window` selected rounds.
bool self_assurance(const PerversityReport& report, Round min_window);

// Round at which the machine first had `min_window` consecutive conforming
// selected rounds after burn-in, i.e. the moment it would become assured.
std::optional<Round> first_assurance_round(const Trace& trace, Forecast alpha, Round burn_in,
                                           Round min_window);

// Deviations on selected rounds strictly after `after`.
std::int64_t deviations_after(const Trace& trace, Forecast alpha, Round after);

// Mean of the indicators. Throws InsufficientDataError when empty.
double population_empirical(std::span<const Outcome> outcomes);

// Outcomes of the selected rounds t >= from.
std::vector<Outcome> selected_outcomes_from(const Trace& trace, Forecast alpha, Round from);

// ---------------------------------------------------------------------------
// Learnability.

// Everything the verdict needs to know about one assessed alpha, pooled
// over replications. Serializable, so a verdict can be rebuilt from
// summaries on disk.
struct AlphaAnalysis {
  Forecast alpha;
  std::int64_t deviations = 0;
  std::optional<Round> last_deviation;
  bool persistent = true;
  bool self_assured = false;
  bool false_assurance = false;
  std::optional<Round> stopping_time;
  std::int64_t post_stop_hits = 0;
  std::int64_t post_stop_count = 0;
  double win_rate = 0.0;

  friend bool operator==(const AlphaAnalysis&, const AlphaAnalysis&) = default;
};

AlphaAnalysis analyze_alpha(std::span<const Trace> traces, Forecast alpha, Round burn_in,
                            Round window, Round min_window);

enum class CannotLearnReason { UniformPerversity, NotSelfAssured, FalseSelfAssurance };

std::string_view to_string(CannotLearnReason r);
CannotLearnReason parse_cannot_learn_reason(std::string_view name);

struct CanLearn {
  Forecast alpha0;
  Forecast learned_value;
  friend bool operator==(const CanLearn&, const CanLearn&) = default;
};

struct CannotLearn {
  CannotLearnReason reason;
  friend bool operator==(const CannotLearn&, const CannotLearn&) = default;
};

using Verdict = std::variant<CanLearn, CannotLearn>;

// Decision tree over per-alpha analyses:
//   every alpha persistent                      -> CannotLearn{UniformPerversity}
//   some alpha stopped, none self-assured       -> CannotLearn{NotSelfAssured}
//   every assured alpha saw deviations resume   -> CannotLearn{FalseSelfAssurance}
//   otherwise                                   -> CanLearn{alpha0, snapped post-stop frequency}
// Throws DataIntegrityError for contradictory analyses or when the learned
// value does not come out equal to alpha0, InsufficientDataError for none.
Verdict learnability_verdict(std::span<const AlphaAnalysis> analyses, const ProbabilityGrid& grid);

struct WinningVsLearning {
  double win_rate = 0.0;
  std::int64_t wins = 0;
  std::int64_t rounds = 0;
  PerversityReport report;
};

// Share of rounds the machine matched Nature, next to the perversity report
// that keeps it from learning anything.
WinningVsLearning winning_vs_learning_demo(const Trace& trace, Forecast alpha, Round burn_in,
                                           Round window);

}  // namespace calgame
