#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "calgame/grid.hpp"
#include "calgame/record.hpp"

namespace calgame {

// Streaming test-set statistics for one assessed forecast alpha:
// the number of selected rounds and how many of them hit.
class CalibrationAccumulator {
 public:
  explicit CalibrationAccumulator(Forecast alpha) : alpha_(alpha) {}

  // Throws DataIntegrityError if record.selected disagrees with
  // record.forecast == alpha.
  CalibrationAccumulator& update(const RoundRecord& record);

  // Throws DataIntegrityError when the alphas differ.
  CalibrationAccumulator& merge(const CalibrationAccumulator& other);

  Forecast alpha() const { return alpha_; }
  std::int64_t n_selected() const { return n_selected_; }
  std::int64_t n_hits() const { return n_hits_; }
  bool empty() const { return n_selected_ == 0; }

  // n_hits / n_selected. Throws EmptyTestSetError when nothing was selected.
  double p_k() const;

  friend bool operator==(const CalibrationAccumulator&, const CalibrationAccumulator&) = default;

 private:
  Forecast alpha_;
  std::int64_t n_selected_ = 0;
  std::int64_t n_hits_ = 0;
};

// Selection flag for a round: the forecast equals alpha exactly. Depends only
// on what is known before the outcome is drawn.
inline bool selects(Forecast forecast, Forecast alpha) { return forecast == alpha; }

// Folds the stored selection flags of `trace` (validated against alpha).
CalibrationAccumulator accumulate(const Trace& trace, Forecast alpha);

// True iff every stored flag equals selects(forecast, alpha).
bool selection_flags_consistent(const Trace& trace, Forecast alpha);

struct SeriesPoint {
  std::int64_t k = 0;
  double p_k = 0.0;
  friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

// p_k after each round whose forecast equals alpha, in round order.
std::vector<SeriesPoint> calibration_series(const Trace& trace, Forecast alpha);

// One accumulator per grid value, selecting on forecast == value.
std::vector<CalibrationAccumulator> calibration_curve(const Trace& trace,
                                                      const ProbabilityGrid& grid);

// Partial sums S_t = sum_{j<=t} X_j with
//   X_j = xi_j * (Y_j - forecast_j) / (xi_0 + ... + xi_j),
// one entry per round (X_j = 0 on unselected rounds). Under forecasts equal
// to the true probability the sums form a zero-mean martingale.
// Throws EmptyTestSetError if no round is selected.
std::vector<double> martingale_diagnostic(const Trace& trace);

// Half-width z * sqrt(alpha (1 - alpha) / n) of the two-sided normal band at
// `confidence` around alpha.
double band_halfwidth(Forecast alpha, std::int64_t n_selected, double confidence);

struct CalibrationReport {
  Forecast alpha;
  std::int64_t n_selected = 0;
  std::int64_t n_hits = 0;
  double p_final = 0.0;
  double abs_dev = 0.0;
  double band_halfwidth = 0.0;
  bool within_band = false;
};

// Finite-horizon calibration evidence. Throws EmptyTestSetError.
CalibrationReport calibration_report(const CalibrationAccumulator& acc, double confidence);

// CSV with header `k,p_k`.
void write_series_csv(std::ostream& out, const std::vector<SeriesPoint>& series);

}  // namespace calgame
