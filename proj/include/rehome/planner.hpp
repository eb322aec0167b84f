#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rehome/costing.hpp"
#include "rehome/forecast.hpp"
#include "rehome/rehoming.hpp"
#include "rehome/topology.hpp"

namespace rehome {

/// Everything a planning run needs besides the network and the forecasts.
struct PlannerConfig {
  TrafficModel traffic;
  Ss7Model ss7;
  Prices prices{Money::from_decimal(1000.0), Money::from_decimal(1000000.0)};
  CostingOptions costing;
  double load_threshold = 0.8;

  bool operator==(const PlannerConfig&) const = default;
};

using ForecastSet = std::map<Id, SubscriberForecast>;

ForecastSet index_forecasts(const std::vector<SubscriberForecast>& forecasts);

struct SwitchComparison {
  UtilizationSeries before;
  UtilizationSeries after;
  CostReport cost;
};

/// One scenario run end to end: classification, rule check, deltas,
/// before/after series per involved switch, and the cost comparison.
struct Evaluation {
  RehomingScenario scenario;
  IdSet source_switch_ids;
  std::optional<ModelClassification> classification;
  std::string classification_error;
  std::vector<Violation> violations;
  std::vector<TrafficDelta> deltas;
  std::vector<SwitchComparison> switches;
  std::optional<int> trigger_month;
  std::optional<CostReport> cost;

  bool valid() const { return violations.empty(); }
};

/// Series and costs are produced only for valid scenarios. Throws
/// PlannerError(InvalidInput) when an involved switch has no forecast.
Evaluation evaluate_scenario(const NetworkTopology& topology, const ForecastSet& forecasts,
                             const PlannerConfig& config, const RehomingScenario& scenario);

}  // namespace rehome
