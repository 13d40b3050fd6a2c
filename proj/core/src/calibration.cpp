#include "calgame/calibration.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <ostream>
#include <string>

#include "calgame/errors.hpp"

namespace calgame {

CalibrationAccumulator& CalibrationAccumulator::update(const RoundRecord& record) {
  if (record.selected != selects(record.forecast, alpha_)) {
    throw DataIntegrityError("round " + std::to_string(record.t) +
                             ": selection flag disagrees with forecast == " +
                             format_probability(alpha_));
  }
  if (record.selected) {
    ++n_selected_;
    n_hits_ += record.outcome.y;
  }
  return *this;
}

CalibrationAccumulator& CalibrationAccumulator::merge(const CalibrationAccumulator& other) {
  if (other.alpha_ != alpha_) {
    throw DataIntegrityError("cannot merge accumulators for different alphas");
  }
  n_selected_ += other.n_selected_;
  n_hits_ += other.n_hits_;
  return *this;
}

double CalibrationAccumulator::p_k() const {
  if (n_selected_ == 0) {
    throw EmptyTestSetError("no round selected for alpha = " + format_probability(alpha_));
  }
  return static_cast<double>(n_hits_) / static_cast<double>(n_selected_);
}

CalibrationAccumulator accumulate(const Trace& trace, Forecast alpha) {
  CalibrationAccumulator acc(alpha);
  for (const auto& r : trace.records()) acc.update(r);
  return acc;
}

bool selection_flags_consistent(const Trace& trace, Forecast alpha) {
  for (const auto& r : trace.records()) {
    if (r.selected != selects(r.forecast, alpha)) return false;
  }
  return true;
}

std::vector<SeriesPoint> calibration_series(const Trace& trace, Forecast alpha) {
  std::vector<SeriesPoint> series;
  std::int64_t k = 0;
  std::int64_t hits = 0;
  for (const auto& r : trace.records()) {
    if (!selects(r.forecast, alpha)) continue;
    ++k;
    hits += r.outcome.y;
    series.push_back({k, static_cast<double>(hits) / static_cast<double>(k)});
  }
  return series;
}

std::vector<CalibrationAccumulator> calibration_curve(const Trace& trace,
                                                      const ProbabilityGrid& grid) {
  std::vector<CalibrationAccumulator> curve;
  curve.reserve(static_cast<std::size_t>(grid.resolution()));
  for (int i = 0; i < grid.resolution(); ++i) curve.emplace_back(grid.at(i));
  for (const auto& r : trace.records()) {
    if (!grid.owns(r.forecast)) throw DataIntegrityError("forecast off the curve's grid");
    RoundRecord as_selected = r;
    as_selected.selected = true;
    curve[r.forecast.index()].update(as_selected);
  }
  return curve;
}

std::vector<double> martingale_diagnostic(const Trace& trace) {
  std::vector<double> sums;
  sums.reserve(trace.size());
  std::int64_t selected = 0;
  double s = 0.0;
  for (const auto& r : trace.records()) {
    if (r.selected) {
      ++selected;
      s += (static_cast<double>(r.outcome.y) - r.forecast.value()) /
           static_cast<double>(selected);
    }
    sums.push_back(s);
  }
  if (selected == 0) throw EmptyTestSetError("martingale diagnostic: no selected round");
  return sums;
}

double band_halfwidth(Forecast alpha, std::int64_t n_selected, double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw DomainError("confidence must be in (0, 1)");
  }
  if (n_selected <= 0) throw EmptyTestSetError("band for an empty test set");
  const boost::math::normal standard;
  const double z = boost::math::quantile(standard, 0.5 + confidence / 2.0);
  const double a = alpha.value();
  return z * std::sqrt(a * (1.0 - a) / static_cast<double>(n_selected));
}

CalibrationReport calibration_report(const CalibrationAccumulator& acc, double confidence) {
  CalibrationReport report;
  report.alpha = acc.alpha();
  report.n_selected = acc.n_selected();
  report.n_hits = acc.n_hits();
  report.p_final = acc.p_k();
  report.abs_dev = std::abs(report.p_final - acc.alpha().value());
  report.band_halfwidth = band_halfwidth(acc.alpha(), acc.n_selected(), confidence);
  report.within_band = report.abs_dev <= report.band_halfwidth;
  return report;
}

void write_series_csv(std::ostream& out, const std::vector<SeriesPoint>& series) {
  out << "k,p_k\n";
  for (const auto& point : series) {
    out << point.k << ',' << format_probability(point.p_k) << '\n';
  }
}

}  // namespace calgame
