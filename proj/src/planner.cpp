#include "rehome/planner.hpp"

#include <algorithm>

namespace rehome {

ForecastSet index_forecasts(const std::vector<SubscriberForecast>& forecasts) {
  ForecastSet out;
  for (const auto& f : forecasts) {
    if (!out.emplace(f.switch_id, f).second)
      throw PlannerError(ErrorCode::InvalidInput, "duplicate forecast for '" + f.switch_id + "'");
  }
  return out;
}

Evaluation evaluate_scenario(const NetworkTopology& topology, const ForecastSet& forecasts,
                             const PlannerConfig& config, const RehomingScenario& scenario) {
  Evaluation ev;
  ev.scenario = scenario;
  ev.source_switch_ids = source_switches(scenario, topology);
  ev.violations = validate_scenario(scenario, topology);
  try {
    ev.classification = classify(scenario, topology);
  } catch (const PlannerError& e) {
    ev.classification_error = e.what();
  }
  if (!ev.valid()) return ev;

  ev.deltas = compute_deltas(scenario, topology);
  std::vector<CostReport> reports;
  for (const auto& delta : ev.deltas) {
    auto it = forecasts.find(delta.switch_id);
    if (it == forecasts.end())
      throw PlannerError(ErrorCode::InvalidInput, "no forecast for switch '" + delta.switch_id + "'");
    const auto& cap = topology.switch_at(delta.switch_id).capacity;

    SwitchComparison cmp;
    cmp.before = build_utilization_series(it->second, config.traffic, config.ss7);
    cmp.after = forecast_after(cmp.before, delta, scenario.effective_month(), config.ss7);
    cmp.cost = compare_futures(cmp.before, cmp.after, cap, config.prices, config.costing);
    if (auto month = headroom_breach_month(cmp.before, cap)) {
      ev.trigger_month = ev.trigger_month ? std::min(*ev.trigger_month, *month) : *month;
    }
    reports.push_back(cmp.cost);
    ev.switches.push_back(std::move(cmp));
  }
  ev.cost = combine_reports(reports, config.prices);
  return ev;
}

}  // namespace rehome
