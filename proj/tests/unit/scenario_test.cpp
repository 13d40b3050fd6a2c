#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <string>

#include "calgame/errors.hpp"
#include "calgame/scenario.hpp"

namespace calgame {
namespace {

const std::string kMinimal = R"({
  "grid": 11,
  "move_order": "MachineFirst",
  "rounds": 1000,
  "replications": 2,
  "seed": 7,
  "assessed_alpha": 0.3,
  "detection_window": 100,
  "nature": {"kind": "iid", "p": 0.3},
  "forecaster": {"kind": "constant", "alpha": 0.3}
})";

TEST(Scenario, MinimalDocumentFillsDefaults) {
  const auto scenario = parse_scenario(kMinimal);
  const auto& c = scenario.config;
  EXPECT_EQ(c.grid.resolution(), 11);
  EXPECT_EQ(c.rounds, 1000);
  EXPECT_EQ(c.replications, 2);
  EXPECT_EQ(c.master_seed, 7u);
  EXPECT_EQ(c.burn_in, 0);
  EXPECT_EQ(c.assurance_window, c.detection_window);
  EXPECT_EQ(c.nature, NatureStrategy(Iid{c.grid.snap(0.3)}));
  EXPECT_FALSE(scenario.output.emit_traces);
  EXPECT_TRUE(scenario.output.emit_series);
  EXPECT_NO_THROW(validate(c));
}

TEST(Scenario, SyntaxErrorCarriesLineAndColumn) {
  const std::string text = "{\n  \"grid\": 11,\n  \"rounds\": ,\n}";
  try {
    parse_scenario(text);
    FAIL() << "expected ScenarioParseError";
  } catch (const ScenarioParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 13u);
  }
}

TEST(Scenario, UnknownKeyIsLocated) {
  std::string text = kMinimal;
  text.insert(text.find("\"seed\""), "\"sead\": 1,\n  ");
  try {
    parse_scenario(text);
    FAIL() << "expected ScenarioParseError";
  } catch (const ScenarioParseError& e) {
    EXPECT_EQ(e.line(), 6u);
    EXPECT_EQ(e.column(), 3u);
    EXPECT_NE(std::string(e.what()).find("sead"), std::string::npos);
  }
}

TEST(Scenario, UnknownNestedKeyIsLocated) {
  std::string text = kMinimal;
  text.replace(text.find("\"p\": 0.3"), 8, "\"q\": 0.3");
  try {
    parse_scenario(text);
    FAIL() << "expected ScenarioParseError";
  } catch (const ScenarioParseError& e) {
    EXPECT_EQ(e.line(), 9u);
  }
}

TEST(Scenario, MissingAndMistypedFields) {
  std::string missing = kMinimal;
  missing.erase(missing.find("\"seed\": 7,"), 10);
  EXPECT_THROW(parse_scenario(missing), ScenarioParseError);
  std::string mistyped = kMinimal;
  mistyped.replace(mistyped.find("1000"), 4, "\"many\"");
  EXPECT_THROW(parse_scenario(mistyped), ScenarioParseError);
  std::string bad_order = kMinimal;
  bad_order.replace(bad_order.find("MachineFirst"), 12, "Sideways");
  EXPECT_THROW(parse_scenario(bad_order), ScenarioParseError);
}

TEST(Scenario, OffGridProbabilityIsAConfigError) {
  std::string text = kMinimal;
  text.replace(text.find("\"p\": 0.3"), 8, "\"p\": 0.35");
  EXPECT_THROW(parse_scenario(text), ConfigError);
}

TEST(Scenario, SemanticChecksLeftToValidate) {
  std::string text = kMinimal;
  text.replace(text.find("\"kind\": \"iid\", \"p\": 0.3"), 23, "\"kind\": \"oakes\"");
  text.replace(text.find("MachineFirst"), 12, "Simultaneous");
  const auto scenario = parse_scenario(text);
  EXPECT_THROW(validate(scenario.config), ConfigError);
}

ScenarioFile random_scenario(std::mt19937_64& gen) {
  const int resolutions[] = {3, 5, 11, 21};
  const ProbabilityGrid grid(resolutions[gen() % 4]);
  auto any = [&] { return grid.at(static_cast<int>(gen() % grid.resolution())); };
  ScenarioFile s;
  auto& c = s.config;
  c.name = "random_" + std::to_string(gen() % 1000);
  c.grid = grid;
  c.move_order = static_cast<MoveOrder>(gen() % 3);
  c.rounds = 100 + static_cast<Round>(gen() % 10000);
  c.replications = 1 + static_cast<std::int64_t>(gen() % 50);
  c.master_seed = gen();
  c.assessed_alpha = any();
  c.burn_in = static_cast<Round>(gen() % 50);
  c.detection_window = 1 + static_cast<Round>(gen() % 50);
  c.assurance_window = c.detection_window + static_cast<Round>(gen() % 10);
  c.confidence = (gen() % 2) ? 0.95 : 0.999;
  if (gen() % 2) c.second_order_times = {0, c.rounds / 2};
  switch (gen() % 5) {
    case 0:
      c.nature = Iid{any()};
      break;
    case 1:
      c.nature = OakesAdversary{};
      break;
    case 2: {
      UniformlyPerverse u;
      u.machine_first_rule = static_cast<PerverseRule>(gen() % 2);
      if (gen() % 2) {
        std::uniform_real_distribution<double> w(0.0, 2.0);
        for (int i = 0; i < grid.resolution(); ++i) u.simultaneous_mix.push_back(w(gen));
      }
      c.nature = u;
      break;
    }
    case 3: {
      SelectivelyPerverse s;
      s.favored = any();
      s.off_favored_rule = static_cast<PerverseRule>(gen() % 2);
      if (gen() % 2) {
        s.stopping_time = 500;
        s.flip_schedule = {100, 200, 350};
      } else {
        s.flip_period = 1 + static_cast<Round>(gen() % 300);
      }
      c.nature = s;
      break;
    }
    default:
      c.nature = TruthfulRevealer{{any(), any()}};
  }
  switch (gen() % 3) {
    case 0:
      c.forecaster = Constant{any()};
      break;
    case 1:
      c.forecaster = EmpiricalFrequency{static_cast<double>(gen() % 3), 3.0 + static_cast<double>(gen() % 4)};
      break;
    default:
      c.forecaster = Mimic{};
  }
  s.output.out_dir = "out/" + c.name;
  s.output.emit_traces = gen() % 2;
  s.output.emit_series = gen() % 2;
  return s;
}

TEST(Scenario, SerializeParseRoundTrip) {
  std::mt19937_64 gen(2024);
  for (int i = 0; i < 300; ++i) {
    const auto scenario = random_scenario(gen);
    const auto text = serialize_scenario(scenario);
    ScenarioFile back;
    ASSERT_NO_THROW(back = parse_scenario(text)) << text;
    EXPECT_EQ(back, scenario) << text;
    EXPECT_EQ(serialize_scenario(back), text);
  }
}

TEST(Scenario, BundledScenariosLoadAndValidate) {
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(CALGAME_SCENARIO_DIR)) {
    if (entry.path().extension() != ".json") continue;
    ++count;
    SCOPED_TRACE(entry.path().string());
    const auto scenario = load_scenario(entry.path());
    EXPECT_NO_THROW(validate(scenario.config));
    EXPECT_EQ(scenario.config.name, entry.path().stem().string());
  }
  EXPECT_EQ(count, 10);
}

TEST(Scenario, UnreadableFile) {
  EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), std::runtime_error);
}

}  // namespace
}  // namespace calgame
