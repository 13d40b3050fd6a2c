#include <CLI11.hpp>
#include <iostream>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
  namespace cli = calgame::cli;
  CLI::App app{"calgame: forecasting games between Nature and a machine"};
  app.require_subcommand(1);

  cli::RunOverrides overrides;
  std::string scenario;
  std::string alphas = "grid";
  std::string summary_dir;

  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--scenario", scenario, "Scenario JSON file")->required();
    sub->add_option("--seed", overrides.seed, "Override the master seed");
    sub->add_option("--rounds", overrides.rounds, "Override the number of rounds");
    sub->add_option("--replications", overrides.replications, "Override the replication count");
    sub->add_option("--out-dir", overrides.out_dir, "Override the output directory");
    sub->add_flag("--no-traces", overrides.no_traces, "Do not write per-replication trace CSVs");
    sub->add_option("--threads", overrides.threads, "Worker threads (0 = all cores)");
  };

  auto* run = app.add_subcommand("run", "Run a scenario and write its summary");
  add_run_flags(run);
  auto* sweep = app.add_subcommand("sweep", "Run a scenario once per assessed alpha");
  add_run_flags(sweep);
  sweep->add_option("--alphas", alphas, "Comma separated grid values, or 'grid'");
  auto* verdict = app.add_subcommand("verdict", "Learnability verdict from summaries");
  verdict->add_option("summary-dir,--summary-dir", summary_dir, "Directory with summary.json files")
      ->required();
  auto* seed_check = app.add_subcommand("seed-check", "Check outputs are reproducible");
  add_run_flags(seed_check);

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cli::cmd_run(scenario, overrides, std::cout, std::cerr);
  if (sweep->parsed()) return cli::cmd_sweep(scenario, alphas, overrides, std::cout, std::cerr);
  if (verdict->parsed()) return cli::cmd_verdict(summary_dir, std::cout, std::cerr);
  if (seed_check->parsed()) return cli::cmd_seed_check(scenario, overrides, std::cout, std::cerr);
  return cli::kExitFailure;
}
