#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "calgame/engine.hpp"
#include "calgame/scenario.hpp"

namespace calgame::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitContractError = 3;
inline constexpr int kExitCannotLearn = 4;

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<Round> rounds;
  std::optional<std::int64_t> replications;
  std::optional<std::string> out_dir;
  bool no_traces = false;
  unsigned threads = 0;
};

void apply_overrides(ScenarioFile& scenario, const RunOverrides& overrides);

// Layout: dir/summary.json, dir/traces/rep_<i>.csv, dir/series/alpha_<v>.csv
// (the series follows replication 0).
void write_outputs(const std::filesystem::path& dir, const ScenarioFile& scenario,
                   const ExperimentResult& result);

int cmd_run(const std::filesystem::path& scenario_path, const RunOverrides& overrides,
            std::ostream& out, std::ostream& err);

// `alphas` is "grid" or a comma separated list of grid values. Constant
// forecasters are re-pointed at each alpha.
int cmd_sweep(const std::filesystem::path& scenario_path, const std::string& alphas,
              const RunOverrides& overrides, std::ostream& out, std::ostream& err);

// Reads every summary.json below `summary_dir`, writes verdict.json there.
int cmd_verdict(const std::filesystem::path& summary_dir, std::ostream& out, std::ostream& err);

// Runs the scenario serially and in parallel and byte-compares the outputs.
int cmd_seed_check(const std::filesystem::path& scenario_path, const RunOverrides& overrides,
                   std::ostream& out, std::ostream& err);

}  // namespace calgame::cli
