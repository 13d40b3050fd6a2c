#include "cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include <unistd.h>

#include "calgame/calibration.hpp"
#include "calgame/errors.hpp"
#include "calgame/summary.hpp"
#include "calgame/trace_csv.hpp"

namespace calgame::cli {
namespace fs = std::filesystem;

namespace {

template <typename Body>
int guarded(const fs::path& input, std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ScenarioParseError& e) {
    err << input.string() << ": parse error: " << e.what() << '\n';
    return kExitParseError;
  } catch (const Error& e) {
    err << input.string() << ": " << e.what() << '\n';
    return kExitContractError;
  } catch (const std::exception& e) {
    err << input.string() << ": " << e.what() << '\n';
    return kExitFailure;
  }
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<Forecast> parse_alphas(const std::string& text, const ProbabilityGrid& grid) {
  std::vector<Forecast> alphas;
  if (text == "grid") {
    for (int i = 0; i < grid.resolution(); ++i) alphas.push_back(grid.at(i));
    return alphas;
  }
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto token = rest.substr(0, comma);
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), x);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw ConfigError("--alphas: cannot read '" + std::string(token) + "'");
    }
    alphas.push_back(grid.require_exact(x, "--alphas entry"));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (alphas.empty()) throw ConfigError("--alphas is empty");
  return alphas;
}

std::vector<fs::path> files_below(const fs::path& root) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) files.push_back(fs::relative(entry.path(), root));
  }
  std::sort(files.begin(), files.end());
  return files;
}

fs::path fresh_temp_dir(const std::string& stem) {
  static std::atomic<unsigned> counter{0};
  const auto base = fs::temp_directory_path();
  for (;;) {
    auto candidate = base / (stem + "-" + std::to_string(::getpid()) + "-" +
                             std::to_string(counter++));
    if (fs::create_directories(candidate)) return candidate;
  }
}

std::string optional_text(const std::optional<Round>& v) {
  return v ? std::to_string(*v) : std::string();
}

}  // namespace

void apply_overrides(ScenarioFile& scenario, const RunOverrides& overrides) {
  if (overrides.seed) scenario.config.master_seed = *overrides.seed;
  if (overrides.rounds) scenario.config.rounds = *overrides.rounds;
  if (overrides.replications) scenario.config.replications = *overrides.replications;
  if (overrides.out_dir) scenario.output.out_dir = *overrides.out_dir;
  if (overrides.no_traces) scenario.output.emit_traces = false;
}

void write_outputs(const fs::path& dir, const ScenarioFile& scenario,
                   const ExperimentResult& result) {
  fs::create_directories(dir);
  write_file(dir / "summary.json", summary_to_json(result.summary));
  if (scenario.output.emit_traces) {
    fs::create_directories(dir / "traces");
    for (const auto& trace : result.traces) {
      std::ostringstream text;
      write_trace_csv(text, trace);
      write_file(dir / "traces" / ("rep_" + std::to_string(trace.replication_index()) + ".csv"),
                 text.str());
    }
  }
  if (scenario.output.emit_series && !result.traces.empty()) {
    fs::create_directories(dir / "series");
    const Forecast alpha = scenario.config.assessed_alpha;
    std::ostringstream text;
    write_series_csv(text, calibration_series(result.traces.front(), alpha));
    write_file(dir / "series" / ("alpha_" + format_probability(alpha) + ".csv"), text.str());
  }
}

int cmd_run(const fs::path& scenario_path, const RunOverrides& overrides, std::ostream& out,
            std::ostream& err) {
  return guarded(scenario_path, err, [&] {
    auto scenario = load_scenario(scenario_path);
    apply_overrides(scenario, overrides);
    validate(scenario.config);
    const auto result = run_experiment(scenario.config, overrides.threads);
    write_outputs(scenario.output.out_dir, scenario, result);
    out << scenario.config.name << ": " << scenario.config.replications << " x "
        << scenario.config.rounds << " rounds -> " << scenario.output.out_dir << '\n';
    return kExitOk;
  });
}

int cmd_sweep(const fs::path& scenario_path, const std::string& alphas,
              const RunOverrides& overrides, std::ostream& out, std::ostream& err) {
  return guarded(scenario_path, err, [&] {
    auto base = load_scenario(scenario_path);
    apply_overrides(base, overrides);
    validate(base.config);
    const fs::path root = base.output.out_dir;
    fs::create_directories(root);

    std::ostringstream table;
    table << "alpha,deviations,last_deviation,p_final,abs_dev\n";
    for (const Forecast alpha : parse_alphas(alphas, base.config.grid)) {
      ScenarioFile scenario = base;
      scenario.config.assessed_alpha = alpha;
      if (std::holds_alternative<Constant>(scenario.config.forecaster)) {
        scenario.config.forecaster = Constant{alpha};
      }
      const auto text = format_probability(alpha);
      scenario.output.out_dir = (root / ("alpha_" + text)).string();
      validate(scenario.config);
      const auto result = run_experiment(scenario.config, overrides.threads);
      write_outputs(scenario.output.out_dir, scenario, result);

      const auto& s = result.summary;
      table << text << ',';
      if (s.analysis) table << s.analysis->deviations;
      table << ',' << (s.analysis ? optional_text(s.analysis->last_deviation) : "") << ',';
      if (s.pooled) table << format_probability(s.pooled->p_final);
      table << ',';
      if (s.expected_abs_deviation) table << format_probability(*s.expected_abs_deviation);
      table << '\n';
      out << "alpha " << text << " done\n";
    }
    write_file(root / "sweep.csv", table.str());
    return kExitOk;
  });
}

int cmd_verdict(const fs::path& summary_dir, std::ostream& out, std::ostream& err) {
  return guarded(summary_dir, err, [&] {
    if (!fs::is_directory(summary_dir)) {
      throw std::runtime_error("not a directory");
    }
    std::optional<ProbabilityGrid> grid;
    std::vector<AlphaAnalysis> analyses;
    for (const auto& rel : files_below(summary_dir)) {
      if (rel.filename() != "summary.json") continue;
      auto digest = read_summary_digest(read_file(summary_dir / rel));
      if (grid && !(*grid == digest.grid)) {
        throw DataIntegrityError("summaries disagree on the grid");
      }
      grid = digest.grid;
      analyses.insert(analyses.end(), digest.per_alpha.begin(), digest.per_alpha.end());
    }
    if (!grid) throw InsufficientDataError("no summary.json below the directory");
    const auto verdict = learnability_verdict(analyses, *grid);
    const auto text = verdict_to_json(verdict);
    write_file(summary_dir / "verdict.json", text);
    out << text;
    return std::holds_alternative<CanLearn>(verdict) ? kExitOk : kExitCannotLearn;
  });
}

int cmd_seed_check(const fs::path& scenario_path, const RunOverrides& overrides,
                   std::ostream& out, std::ostream& err) {
  return guarded(scenario_path, err, [&] {
    auto scenario = load_scenario(scenario_path);
    apply_overrides(scenario, overrides);
    validate(scenario.config);

    const fs::path serial_dir = fresh_temp_dir("calgame-seed-check");
    const fs::path parallel_dir = fresh_temp_dir("calgame-seed-check");
    struct Cleanup {
      std::vector<fs::path> dirs;
      ~Cleanup() {
        std::error_code ec;
        for (const auto& d : dirs) fs::remove_all(d, ec);
      }
    } cleanup{{serial_dir, parallel_dir}};

    const unsigned parallel_threads =
        std::max(2u, overrides.threads == 0 ? std::thread::hardware_concurrency()
                                            : overrides.threads);
    write_outputs(serial_dir, scenario, run_experiment(scenario.config, 1));
    write_outputs(parallel_dir, scenario, run_experiment(scenario.config, parallel_threads));

    const auto serial_files = files_below(serial_dir);
    const auto parallel_files = files_below(parallel_dir);
    if (serial_files != parallel_files) {
      out << scenario.config.name << ": output file sets differ\n";
      return kExitFailure;
    }
    for (const auto& rel : serial_files) {
      if (read_file(serial_dir / rel) != read_file(parallel_dir / rel)) {
        out << scenario.config.name << ": " << rel.string() << " differs\n";
        return kExitFailure;
      }
    }
    out << scenario.config.name << ": identical (" << serial_files.size() << " files)\n";
    return kExitOk;
  });
}

}  // namespace calgame::cli
