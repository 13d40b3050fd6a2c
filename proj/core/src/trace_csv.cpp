#include "calgame/trace_csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "calgame/errors.hpp"

namespace calgame {
namespace {

constexpr std::string_view kHeader = "t,forecast,true_prob,outcome,selected,move_order";

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

[[noreturn]] void bad_row(std::size_t line_no, const std::string& why) {
  throw DataIntegrityError("trace csv line " + std::to_string(line_no) + ": " + why);
}

template <typename T>
T parse_number(std::string_view text, std::size_t line_no, const char* column) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    bad_row(line_no, std::string("bad ") + column + " '" + std::string(text) + "'");
  }
  return value;
}

Forecast parse_grid_value(std::string_view text, const ProbabilityGrid& grid,
                          std::size_t line_no, const char* column) {
  const double x = parse_number<double>(text, line_no, column);
  auto f = grid.exact(x);
  if (!f) bad_row(line_no, std::string(column) + " '" + std::string(text) + "' is off-grid");
  return *f;
}

bool parse_flag(std::string_view text, std::size_t line_no, const char* column) {
  if (text == "0") return false;
  if (text == "1") return true;
  bad_row(line_no, std::string(column) + " must be 0 or 1");
}

}  // namespace

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << kHeader << '\n';
  std::string line;
  for (const auto& r : trace.records()) {
    line.clear();
    line += std::to_string(r.t);
    line += ',';
    line += format_probability(r.forecast);
    line += ',';
    line += format_probability(r.true_prob);
    line += ',';
    line += static_cast<char>('0' + r.outcome.y);
    line += ',';
    line += r.selected ? '1' : '0';
    line += ',';
    line += to_string(r.move_order);
    line += '\n';
    out << line;
  }
}

Trace read_trace_csv(std::istream& in, const ProbabilityGrid& grid) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    throw DataIntegrityError("trace csv: missing or unexpected header");
  }
  Trace trace;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != 6) bad_row(line_no, "expected 6 fields");
    RoundRecord r;
    r.t = parse_number<Round>(fields[0], line_no, "t");
    r.forecast = parse_grid_value(fields[1], grid, line_no, "forecast");
    r.true_prob = parse_grid_value(fields[2], grid, line_no, "true_prob");
    r.outcome.y = parse_flag(fields[3], line_no, "outcome") ? 1 : 0;
    r.selected = parse_flag(fields[4], line_no, "selected");
    try {
      r.move_order = parse_move_order(fields[5]);
    } catch (const ConfigError& e) {
      bad_row(line_no, e.what());
    }
    trace.append(r);
  }
  return trace;
}

}  // namespace calgame
