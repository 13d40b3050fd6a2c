#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "calgame/config.hpp"
#include "calgame/errors.hpp"

namespace calgame {

struct OutputOptions {
  std::string out_dir;
  bool emit_traces = false;
  bool emit_series = true;
  friend bool operator==(const OutputOptions&, const OutputOptions&) = default;
};

// A scenario document: the experiment plus where its results go.
struct ScenarioFile {
  ScenarioConfig config;
  OutputOptions output;
  friend bool operator==(const ScenarioFile&, const ScenarioFile&) = default;
};

// Malformed document: bad JSON, unknown key, wrong type, missing field.
// Positions are 1-based.
class ScenarioParseError : public Error {
 public:
  ScenarioParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Parses the document; grid membership of probabilities is checked
// (ConfigError), the remaining semantic checks are left to validate().
ScenarioFile parse_scenario(std::string_view text);
ScenarioFile load_scenario(const std::filesystem::path& path);

std::string serialize_scenario(const ScenarioFile& scenario);

}  // namespace calgame
