#include "calgame/summary.hpp"

#include <algorithm>
#include <set>

#include "calgame/errors.hpp"
#include "json_io.hpp"

namespace calgame {
namespace {

using detail::OrderedJson;
using detail::probability_json;

template <typename T>
OrderedJson optional_json(const std::optional<T>& v) {
  return v ? OrderedJson(*v) : OrderedJson(nullptr);
}

std::vector<Round> report_times(const ScenarioConfig& config) {
  if (!config.second_order_times.empty()) return config.second_order_times;
  std::set<Round> times{0, config.rounds / 2, config.rounds - 1};
  return {times.begin(), times.end()};
}

OrderedJson calibration_json(const CalibrationReport& c) {
  OrderedJson j;
  j["alpha"] = probability_json(c.alpha);
  j["n_selected"] = c.n_selected;
  j["n_hits"] = c.n_hits;
  j["p_final"] = c.p_final;
  j["abs_dev"] = c.abs_dev;
  j["band_halfwidth"] = c.band_halfwidth;
  j["within_band"] = c.within_band;
  return j;
}

OrderedJson analysis_json(const AlphaAnalysis& a) {
  OrderedJson j;
  j["alpha"] = probability_json(a.alpha);
  j["deviations"] = a.deviations;
  j["last_deviation"] = optional_json(a.last_deviation);
  j["self_assured"] = a.self_assured;
  j["persistent"] = a.persistent;
  j["false_assurance"] = a.false_assurance;
  j["stopping_time"] = optional_json(a.stopping_time);
  j["post_stop_hits"] = a.post_stop_hits;
  j["post_stop_count"] = a.post_stop_count;
  j["win_rate"] = a.win_rate;
  return j;
}

OrderedJson verdict_json(const Verdict& verdict) {
  OrderedJson j;
  if (const auto* can = std::get_if<CanLearn>(&verdict)) {
    j["kind"] = "CanLearn";
    j["alpha0"] = probability_json(can->alpha0);
    j["learned_value"] = probability_json(can->learned_value);
  } else {
    j["kind"] = "CannotLearn";
    j["reason"] = std::string(to_string(std::get<CannotLearn>(verdict).reason));
  }
  return j;
}

template <typename T>
T field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw DataIntegrityError(std::string("summary lacks '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw DataIntegrityError(std::string("summary field '") + key + "': " + e.what());
  }
}

template <typename T>
std::optional<T> optional_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return field<T>(j, key);
}

}  // namespace

ExperimentSummary summarize(const ScenarioConfig& config, std::span<const Trace> traces) {
  ExperimentSummary s;
  s.config = config;
  const Forecast alpha = config.assessed_alpha;

  CalibrationAccumulator pooled(alpha);
  for (const auto& trace : traces) {
    ReplicationSummary rep;
    rep.index = trace.replication_index();
    const auto acc = accumulate(trace, alpha);
    pooled.merge(acc);
    rep.n_selected = acc.n_selected();
    rep.n_hits = acc.n_hits();
    if (!acc.empty()) {
      rep.calibration = calibration_report(acc, config.confidence);
      rep.martingale_final = martingale_diagnostic(trace).back();
    }
    try {
      rep.perversity =
          detect_perversity(trace, alpha, config.burn_in, config.detection_window);
      rep.self_assured = self_assurance(*rep.perversity, config.assurance_window);
    } catch (const InsufficientDataError&) {
    } catch (const DomainError&) {
    }
    s.per_replication.push_back(std::move(rep));
  }
  if (!pooled.empty()) s.pooled = calibration_report(pooled, config.confidence);

  try {
    s.expected_abs_deviation = expected_abs_deviation(traces, alpha);
  } catch (const Error&) {
  }

  try {
    s.analysis = analyze_alpha(traces, alpha, config.burn_in, config.detection_window,
                               config.assurance_window);
  } catch (const Error& e) {
    s.analysis_error = e.what();
  }

  if (!traces.empty()) {
    for (Round t : report_times(config)) {
      if (t >= 0 && static_cast<std::size_t>(t) < traces.front().size()) {
        s.second_order.push_back(estimate_second_order(traces, t, alpha));
      }
    }
  }

  if (s.analysis) {
    try {
      s.verdict = learnability_verdict(std::span(&*s.analysis, 1), config.grid);
    } catch (const Error& e) {
      s.verdict_error = e.what();
    }
  }
  return s;
}

std::string summary_to_json(const ExperimentSummary& s) {
  OrderedJson j;
  j["scenario"] = s.config.name;
  j["config"] = detail::config_to_json(s.config);
  j["calibration"] = s.pooled ? calibration_json(*s.pooled) : OrderedJson(nullptr);
  j["expected_abs_deviation"] = optional_json(s.expected_abs_deviation);
  auto per_alpha = OrderedJson::array();
  if (s.analysis) per_alpha.push_back(analysis_json(*s.analysis));
  j["per_alpha"] = per_alpha;
  if (!s.analysis_error.empty()) j["analysis_error"] = s.analysis_error;

  auto second_order = OrderedJson::array();
  for (const auto& e : s.second_order) {
    OrderedJson item;
    item["t"] = e.t;
    item["alpha"] = probability_json(e.alpha);
    item["fraction"] = e.fraction;
    item["class"] = std::string(to_string(e.classification));
    second_order.push_back(item);
  }
  j["second_order"] = second_order;
  j["verdict"] = s.verdict ? verdict_json(*s.verdict) : OrderedJson(nullptr);
  if (!s.verdict_error.empty()) j["verdict_error"] = s.verdict_error;

  auto reps = OrderedJson::array();
  for (const auto& r : s.per_replication) {
    OrderedJson item;
    item["index"] = r.index;
    item["n_selected"] = r.n_selected;
    item["n_hits"] = r.n_hits;
    if (r.calibration) {
      item["p_final"] = r.calibration->p_final;
      item["abs_dev"] = r.calibration->abs_dev;
      item["band_halfwidth"] = r.calibration->band_halfwidth;
      item["within_band"] = r.calibration->within_band;
    } else {
      item["p_final"] = nullptr;
    }
    if (r.perversity) {
      item["deviations"] = r.perversity->deviation_count_post_burn_in;
      item["last_deviation"] = optional_json(r.perversity->last_deviation_time);
      item["quiet_run"] = r.perversity->quiet_run;
      item["perversity"] = std::string(to_string(r.perversity->verdict));
    } else {
      item["perversity"] = nullptr;
    }
    item["self_assured"] = r.self_assured;
    item["martingale_final"] = optional_json(r.martingale_final);
    reps.push_back(item);
  }
  j["per_replication"] = reps;
  return j.dump(2) + "\n";
}

std::string verdict_to_json(const Verdict& verdict) { return verdict_json(verdict).dump(2) + "\n"; }

SummaryDigest read_summary_digest(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text.begin(), json_text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw DataIntegrityError(std::string("summary is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("config") || !doc.contains("per_alpha")) {
    throw DataIntegrityError("not a summary document");
  }
  SummaryDigest digest{ProbabilityGrid(field<int>(doc.at("config"), "grid")), {}};
  auto grid_value = [&](double x) {
    auto f = digest.grid.exact(x);
    if (!f) throw DataIntegrityError("summary alpha " + format_probability(x) + " is off-grid");
    return *f;
  };
  for (const auto& item : doc.at("per_alpha")) {
    AlphaAnalysis a;
    a.alpha = grid_value(field<double>(item, "alpha"));
    a.deviations = field<std::int64_t>(item, "deviations");
    a.last_deviation = optional_field<Round>(item, "last_deviation");
    a.self_assured = field<bool>(item, "self_assured");
    a.persistent = field<bool>(item, "persistent");
    a.false_assurance = field<bool>(item, "false_assurance");
    a.stopping_time = optional_field<Round>(item, "stopping_time");
    a.post_stop_hits = field<std::int64_t>(item, "post_stop_hits");
    a.post_stop_count = field<std::int64_t>(item, "post_stop_count");
    a.win_rate = field<double>(item, "win_rate");
    digest.per_alpha.push_back(a);
  }
  return digest;
}

}  // namespace calgame
