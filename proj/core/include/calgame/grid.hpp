#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace calgame {

// A point of a uniform probability grid. Two forecasts are equal iff they
// live on the same grid and have the same index; there is no floating
// tolerance anywhere in forecast comparison.
class Forecast {
 public:
  constexpr Forecast() = default;
  constexpr Forecast(std::uint16_t index, std::uint16_t last_index)
      : index_(index), last_index_(last_index) {}

  constexpr std::uint16_t index() const { return index_; }
  constexpr std::uint16_t last_index() const { return last_index_; }
  double value() const {
    return static_cast<double>(index_) / static_cast<double>(last_index_);
  }

  friend constexpr bool operator==(Forecast, Forecast) = default;

 private:
  std::uint16_t index_ = 0;
  std::uint16_t last_index_ = 1;
};

// The set {0, 1/(G-1), ..., 1} of machine-representable probabilities.
class ProbabilityGrid {
 public:
  static constexpr int kMaxResolution = 65536;

  // Throws ConfigError unless 2 <= resolution <= kMaxResolution.
  explicit ProbabilityGrid(int resolution = 11);

  int resolution() const { return last_index_ + 1; }
  int last_index() const { return last_index_; }

  Forecast at(int index) const;
  double value(int index) const;
  Forecast first() const { return at(0); }
  Forecast last() const { return at(last_index_); }

  // Nearest grid point; exact ties go to the smaller index.
  // Throws DomainError for x outside [0, 1] (or NaN).
  Forecast snap(double x) const;

  // The grid point whose value is bit-identical to x, if any.
  std::optional<Forecast> exact(double x) const;

  // Like exact(), but throws ConfigError naming `what` when x is off-grid.
  Forecast require_exact(double x, const std::string& what) const;

  bool owns(Forecast f) const {
    return f.last_index() == last_index_ && f.index() <= last_index_;
  }

  // True when 1/2 is a grid value, which the Oakes map needs.
  bool has_half() const { return last_index_ % 2 == 0; }

  friend bool operator==(const ProbabilityGrid&, const ProbabilityGrid&) = default;

 private:
  int last_index_;
};

// Shortest decimal text that parses back to f.value() exactly.
std::string format_probability(Forecast f);
std::string format_probability(double x);

}  // namespace calgame
