#include "calgame/grid.hpp"

#include <charconv>
#include <cmath>

#include "calgame/errors.hpp"

namespace calgame {

ProbabilityGrid::ProbabilityGrid(int resolution) : last_index_(resolution - 1) {
  if (resolution < 2 || resolution > kMaxResolution) {
    throw ConfigError("grid resolution must be in [2, 65536], got " +
                      std::to_string(resolution));
  }
}

Forecast ProbabilityGrid::at(int index) const {
  if (index < 0 || index > last_index_) {
    throw DomainError("grid index " + std::to_string(index) + " out of range");
  }
  return Forecast(static_cast<std::uint16_t>(index),
                  static_cast<std::uint16_t>(last_index_));
}

double ProbabilityGrid::value(int index) const { return at(index).value(); }

Forecast ProbabilityGrid::snap(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("probability " + format_probability(x) +
                      " outside [0, 1]");
  }
  const double scaled = x * last_index_;
  int lo = static_cast<int>(std::floor(scaled));
  if (lo >= last_index_) return last();
  return scaled - lo <= 0.5 ? at(lo) : at(lo + 1);
}

std::optional<Forecast> ProbabilityGrid::exact(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) return std::nullopt;
  const auto index = static_cast<int>(std::lround(x * last_index_));
  const Forecast candidate = at(index);
  if (candidate.value() != x) return std::nullopt;
  return candidate;
}

Forecast ProbabilityGrid::require_exact(double x, const std::string& what) const {
  auto f = exact(x);
  if (!f) {
    throw ConfigError(what + " = " + format_probability(x) +
                      " is not a value of the " + std::to_string(resolution()) +
                      "-point grid");
  }
  return *f;
}

std::string format_probability(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string format_probability(Forecast f) { return format_probability(f.value()); }

}  // namespace calgame
