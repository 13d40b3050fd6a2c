#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "calgame/calibration.hpp"
#include "calgame/config.hpp"
#include "calgame/inference.hpp"
#include "calgame/record.hpp"

namespace calgame {

struct ReplicationSummary {
  std::int64_t index = 0;
  std::int64_t n_selected = 0;
  std::int64_t n_hits = 0;
  std::optional<CalibrationReport> calibration;  // absent for an empty test set
  std::optional<PerversityReport> perversity;    // absent with too few selected rounds
  bool self_assured = false;
  std::optional<double> martingale_final;
};

struct ExperimentSummary {
  ScenarioConfig config;
  std::optional<CalibrationReport> pooled;
  std::optional<double> expected_abs_deviation;
  std::optional<AlphaAnalysis> analysis;
  std::string analysis_error;
  std::vector<SecondOrderEstimate> second_order;
  std::optional<Verdict> verdict;
  std::string verdict_error;
  std::vector<ReplicationSummary> per_replication;
};

ExperimentSummary summarize(const ScenarioConfig& config, std::span<const Trace> traces);

// Deterministic JSON text (no timestamps, fixed key order).
std::string summary_to_json(const ExperimentSummary& summary);

// The parts of a summary.json that feed the learnability verdict.
struct SummaryDigest {
  ProbabilityGrid grid;
  std::vector<AlphaAnalysis> per_alpha;
};

// Throws DataIntegrityError for text that is not a summary document.
SummaryDigest read_summary_digest(std::string_view json_text);

std::string verdict_to_json(const Verdict& verdict);

}  // namespace calgame
