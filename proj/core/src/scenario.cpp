#include "calgame/scenario.hpp"

#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "json_io.hpp"

namespace calgame {
namespace {

using nlohmann::json;

struct SchemaError {
  std::string pointer;
  std::string message;
};

// Character iterator that publishes how far the parser has read, so the SAX
// pass below can remember where each key sits in the text.
class CountingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  CountingIterator() = default;
  CountingIterator(const char* p, const char* begin, std::shared_ptr<std::size_t> offset)
      : p_(p), begin_(begin), offset_(std::move(offset)) {}

  reference operator*() const { return *p_; }
  CountingIterator& operator++() {
    ++p_;
    if (offset_) *offset_ = static_cast<std::size_t>(p_ - begin_);
    return *this;
  }
  CountingIterator operator++(int) {
    auto copy = *this;
    ++*this;
    return copy;
  }
  friend bool operator==(const CountingIterator& a, const CountingIterator& b) {
    return a.p_ == b.p_;
  }

 private:
  const char* p_ = nullptr;
  const char* begin_ = nullptr;
  std::shared_ptr<std::size_t> offset_;
};

// Records the text offset just past every object key, by JSON pointer.
// Array elements share their array's pointer.
struct KeyLocator : nlohmann::json_sax<json> {
  std::shared_ptr<std::size_t> offset;
  std::string_view text;
  std::vector<std::string> stack;
  std::string pending;
  std::map<std::string, std::size_t> positions;

  bool null() override { return true; }
  bool boolean(bool) override { return true; }
  bool number_integer(number_integer_t) override { return true; }
  bool number_unsigned(number_unsigned_t) override { return true; }
  bool number_float(number_float_t, const string_t&) override { return true; }
  bool string(string_t&) override { return true; }
  bool binary(binary_t&) override { return true; }
  bool start_object(std::size_t) override {
    stack.push_back(pending);
    return true;
  }
  bool key(string_t& k) override {
    pending = stack.back() + "/" + k;
    positions.emplace(pending, key_start(std::min(*offset, text.size())));
    return true;
  }

  // The lexer has already read past the key's closing quote and the colon.
  std::size_t key_start(std::size_t end) const {
    std::size_t close = text.rfind('"', end == 0 ? 0 : end - 1);
    if (close == std::string_view::npos || close == 0) return end;
    for (std::size_t i = close; i-- > 0;) {
      if (text[i] != '"') continue;
      std::size_t backslashes = 0;
      while (backslashes < i && text[i - 1 - backslashes] == '\\') ++backslashes;
      if (backslashes % 2 == 0) return i;
    }
    return end;
  }
  bool end_object() override {
    stack.pop_back();
    return true;
  }
  bool start_array(std::size_t) override {
    stack.push_back(pending);
    return true;
  }
  bool end_array() override {
    stack.pop_back();
    return true;
  }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override {
    return false;
  }
};

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::size_t locate(const std::map<std::string, std::size_t>& positions, std::string pointer) {
  while (!pointer.empty()) {
    if (auto it = positions.find(pointer); it != positions.end()) return it->second;
    pointer.erase(pointer.rfind('/'));
  }
  return 0;
}

// Reads one JSON object, remembering which keys were consumed so leftovers
// can be rejected.
class ObjectReader {
 public:
  ObjectReader(const json& value, std::string pointer)
      : value_(value), pointer_(std::move(pointer)) {
    if (!value_.is_object()) fail(pointer_, "expected an object");
  }

  bool has(const std::string& key) const { return value_.contains(key); }

  const json& get(const std::string& key) {
    seen_.insert(key);
    if (!value_.contains(key)) fail(pointer_, "missing required key '" + key + "'");
    return value_.at(key);
  }

  std::string path(const std::string& key) const { return pointer_ + "/" + key; }

  std::string string(const std::string& key) {
    const auto& v = get(key);
    if (!v.is_string()) fail(path(key), "expected a string");
    return v.get<std::string>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const auto& v = get(key);
    if (!v.is_boolean()) fail(path(key), "expected true or false");
    return v.get<bool>();
  }

  double number(const std::string& key) {
    const auto& v = get(key);
    if (!v.is_number()) fail(path(key), "expected a number");
    return v.get<double>();
  }

  template <typename Int>
  Int integer(const std::string& key) {
    return as_integer<Int>(get(key), path(key));
  }

  template <typename Int>
  Int integer(const std::string& key, Int fallback) {
    return has(key) ? integer<Int>(key) : fallback;
  }

  template <typename Int>
  static Int as_integer(const json& v, const std::string& where) {
    if (v.is_number_unsigned()) {
      const auto u = v.get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(std::numeric_limits<Int>::max())) {
        fail(where, "integer out of range");
      }
      return static_cast<Int>(u);
    }
    if (v.is_number_integer()) {
      const auto i = v.get<std::int64_t>();
      if constexpr (std::is_unsigned_v<Int>) {
        if (i < 0) fail(where, "expected a non-negative integer");
      } else {
        if (i < std::numeric_limits<Int>::min() || i > std::numeric_limits<Int>::max()) {
          fail(where, "integer out of range");
        }
      }
      return static_cast<Int>(i);
    }
    fail(where, "expected an integer");
  }

  const json& array(const std::string& key) {
    const auto& v = get(key);
    if (!v.is_array()) fail(path(key), "expected an array");
    return v;
  }

  void finish() const {
    for (const auto& [key, unused] : value_.items()) {
      if (!seen_.contains(key)) fail(path(key), "unknown key '" + key + "'");
    }
  }

  [[noreturn]] static void fail(const std::string& pointer, const std::string& message) {
    throw SchemaError{pointer, message};
  }

 private:
  const json& value_;
  std::string pointer_;
  std::set<std::string> seen_;
};

Forecast probability(ObjectReader& r, const std::string& key, const ProbabilityGrid& grid) {
  return grid.require_exact(r.number(key), r.path(key));
}

std::vector<Forecast> probability_list(ObjectReader& r, const std::string& key,
                                       const ProbabilityGrid& grid) {
  std::vector<Forecast> out;
  for (const auto& v : r.array(key)) {
    if (!v.is_number()) ObjectReader::fail(r.path(key), "expected numbers");
    out.push_back(grid.require_exact(v.get<double>(), r.path(key)));
  }
  return out;
}

std::vector<Round> round_list(ObjectReader& r, const std::string& key) {
  std::vector<Round> out;
  if (!r.has(key)) return out;
  for (const auto& v : r.array(key)) out.push_back(ObjectReader::as_integer<Round>(v, r.path(key)));
  return out;
}

PerverseRule rule(ObjectReader& r, const std::string& key) {
  if (!r.has(key)) return PerverseRule::OakesMap;
  const auto name = r.string(key);
  try {
    return parse_perverse_rule(name);
  } catch (const ConfigError& e) {
    ObjectReader::fail(r.path(key), e.what());
  }
}

NatureStrategy parse_nature(const json& value, const ProbabilityGrid& grid) {
  ObjectReader r(value, "/nature");
  const auto kind = r.string("kind");
  NatureStrategy strategy;
  if (kind == "iid") {
    strategy = Iid{probability(r, "p", grid)};
  } else if (kind == "oakes") {
    strategy = OakesAdversary{};
  } else if (kind == "uniformly_perverse") {
    UniformlyPerverse s;
    s.machine_first_rule = rule(r, "machine_first_rule");
    if (r.has("simultaneous_mix")) {
      for (const auto& w : r.array("simultaneous_mix")) {
        if (!w.is_number()) ObjectReader::fail(r.path("simultaneous_mix"), "expected numbers");
        s.simultaneous_mix.push_back(w.get<double>());
      }
    }
    strategy = s;
  } else if (kind == "selectively_perverse") {
    SelectivelyPerverse s;
    s.favored = probability(r, "favored", grid);
    if (r.has("stopping_time")) s.stopping_time = r.integer<Round>("stopping_time");
    s.flip_schedule = round_list(r, "flip_schedule");
    if (r.has("flip_period")) s.flip_period = r.integer<Round>("flip_period");
    s.off_favored_rule = rule(r, "off_favored_rule");
    strategy = s;
  } else if (kind == "truthful_revealer") {
    strategy = TruthfulRevealer{probability_list(r, "schedule", grid)};
  } else {
    ObjectReader::fail(r.path("kind"), "unknown nature kind '" + kind + "'");
  }
  r.finish();
  return strategy;
}

ForecasterStrategy parse_forecaster(const json& value, const ProbabilityGrid& grid) {
  ObjectReader r(value, "/forecaster");
  const auto kind = r.string("kind");
  ForecasterStrategy strategy;
  if (kind == "constant") {
    strategy = Constant{probability(r, "alpha", grid)};
  } else if (kind == "empirical_frequency") {
    EmpiricalFrequency s;
    if (r.has("prior_successes")) s.prior_successes = r.number("prior_successes");
    if (r.has("prior_trials")) s.prior_trials = r.number("prior_trials");
    strategy = s;
  } else if (kind == "mimic") {
    strategy = Mimic{};
  } else {
    ObjectReader::fail(r.path("kind"), "unknown forecaster kind '" + kind + "'");
  }
  r.finish();
  return strategy;
}

ScenarioFile parse_document(const json& doc) {
  ObjectReader r(doc, "");
  ScenarioFile file;
  auto& c = file.config;
  if (r.has("name")) c.name = r.string("name");
  c.grid = ProbabilityGrid(r.integer<int>("grid"));
  {
    const auto order = r.string("move_order");
    try {
      c.move_order = parse_move_order(order);
    } catch (const ConfigError& e) {
      ObjectReader::fail(r.path("move_order"), e.what());
    }
  }
  c.rounds = r.integer<Round>("rounds");
  c.replications = r.integer<std::int64_t>("replications");
  c.master_seed = r.integer<std::uint64_t>("seed");
  c.assessed_alpha = probability(r, "assessed_alpha", c.grid);
  c.burn_in = r.integer<Round>("burn_in", 0);
  c.detection_window = r.integer<Round>("detection_window");
  c.assurance_window = r.integer<Round>("assurance_window", c.detection_window);
  if (r.has("confidence")) c.confidence = r.number("confidence");
  c.second_order_times = round_list(r, "second_order_times");
  c.nature = parse_nature(r.get("nature"), c.grid);
  c.forecaster = parse_forecaster(r.get("forecaster"), c.grid);

  file.output.out_dir = "out/" + c.name;
  if (r.has("output")) {
    ObjectReader o(r.get("output"), "/output");
    if (o.has("out_dir")) file.output.out_dir = o.string("out_dir");
    file.output.emit_traces = o.boolean("emit_traces", false);
    file.output.emit_series = o.boolean("emit_series", true);
    o.finish();
  }
  r.finish();
  return file;
}

detail::OrderedJson rounds_json(const std::vector<Round>& rounds) {
  auto out = detail::OrderedJson::array();
  for (Round t : rounds) out.push_back(t);
  return out;
}

detail::OrderedJson nature_json(const NatureStrategy& strategy) {
  detail::OrderedJson j;
  j["kind"] = std::string(nature_kind(strategy));
  if (const auto* s = std::get_if<Iid>(&strategy)) {
    j["p"] = detail::probability_json(s->p);
  } else if (const auto* s = std::get_if<UniformlyPerverse>(&strategy)) {
    j["machine_first_rule"] = std::string(to_string(s->machine_first_rule));
    if (!s->simultaneous_mix.empty()) j["simultaneous_mix"] = s->simultaneous_mix;
  } else if (const auto* s = std::get_if<SelectivelyPerverse>(&strategy)) {
    j["favored"] = detail::probability_json(s->favored);
    if (s->stopping_time) j["stopping_time"] = *s->stopping_time;
    if (!s->flip_schedule.empty()) j["flip_schedule"] = rounds_json(s->flip_schedule);
    if (s->flip_period) j["flip_period"] = *s->flip_period;
    j["off_favored_rule"] = std::string(to_string(s->off_favored_rule));
  } else if (const auto* s = std::get_if<TruthfulRevealer>(&strategy)) {
    auto schedule = detail::OrderedJson::array();
    for (auto p : s->schedule) schedule.push_back(detail::probability_json(p));
    j["schedule"] = schedule;
  }
  return j;
}

detail::OrderedJson forecaster_json(const ForecasterStrategy& strategy) {
  detail::OrderedJson j;
  j["kind"] = std::string(forecaster_kind(strategy));
  if (const auto* s = std::get_if<Constant>(&strategy)) {
    j["alpha"] = detail::probability_json(s->alpha);
  } else if (const auto* s = std::get_if<EmpiricalFrequency>(&strategy)) {
    j["prior_successes"] = s->prior_successes;
    j["prior_trials"] = s->prior_trials;
  }
  return j;
}

}  // namespace

ScenarioParseError::ScenarioParseError(std::size_t line, std::size_t column,
                                       const std::string& message)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
            message),
      line_(line),
      column_(column) {}

namespace detail {

OrderedJson config_to_json(const ScenarioConfig& c) {
  OrderedJson j;
  j["name"] = c.name;
  j["grid"] = c.grid.resolution();
  j["move_order"] = std::string(to_string(c.move_order));
  j["rounds"] = c.rounds;
  j["replications"] = c.replications;
  j["seed"] = c.master_seed;
  j["assessed_alpha"] = probability_json(c.assessed_alpha);
  j["burn_in"] = c.burn_in;
  j["detection_window"] = c.detection_window;
  j["assurance_window"] = c.assurance_window;
  j["confidence"] = c.confidence;
  j["second_order_times"] = rounds_json(c.second_order_times);
  j["nature"] = nature_json(c.nature);
  j["forecaster"] = forecaster_json(c.forecaster);
  return j;
}

}  // namespace detail

ScenarioFile parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // byte is 1-based and points at the offending character
    const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string message = e.what();
    if (auto colon = message.find(": "); colon != std::string::npos) {
      message = message.substr(colon + 2);
    }
    throw ScenarioParseError(line, column, message);
  }
  try {
    return parse_document(doc);
  } catch (const SchemaError& e) {
    KeyLocator locator;
    locator.offset = std::make_shared<std::size_t>(0);
    locator.text = text;
    CountingIterator first(text.data(), text.data(), locator.offset);
    CountingIterator last(text.data() + text.size(), text.data(), nullptr);
    json::sax_parse(first, last, &locator);
    const auto [line, column] = line_column(text, locate(locator.positions, e.pointer));
    throw ScenarioParseError(line, column,
                             (e.pointer.empty() ? std::string("/") : e.pointer) + ": " + e.message);
  }
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read scenario file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string serialize_scenario(const ScenarioFile& scenario) {
  auto j = detail::config_to_json(scenario.config);
  detail::OrderedJson output;
  output["out_dir"] = scenario.output.out_dir;
  output["emit_traces"] = scenario.output.emit_traces;
  output["emit_series"] = scenario.output.emit_series;
  j["output"] = output;
  return j.dump(2) + "\n";
}

}  // namespace calgame
