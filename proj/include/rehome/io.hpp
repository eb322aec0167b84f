#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "rehome/costing.hpp"
#include "rehome/forecast.hpp"
#include "rehome/optimizer.hpp"
#include "rehome/planner.hpp"
#include "rehome/rehoming.hpp"
#include "rehome/runbook.hpp"
#include "rehome/topology.hpp"

namespace rehome {

using nlohmann::json;

// Readers are strict: unknown fields and wrongly typed values raise
// PlannerError(Parse) naming the offending path.
NetworkTopology parse_topology(const json& j);
std::vector<SubscriberForecast> parse_forecasts(const json& j);
PlannerConfig parse_config(const json& j);
RehomingScenario parse_scenario(const json& j);
/// Scenarios of a plan document, or a single scenario document.
std::vector<RehomingScenario> parse_plan_scenarios(const json& j);

json to_json(const NetworkTopology& t);
json to_json(const std::vector<SubscriberForecast>& forecasts);
json to_json(const PlannerConfig& c);
json to_json(const RehomingScenario& s);
json to_json(const Violation& v);
json to_json(const std::vector<Violation>& v);
json to_json(const ModelClassification& c);
json to_json(const TrafficDelta& d);
json to_json(const UtilizationSeries& s);
json to_json(const ExpansionPlan& p);
json to_json(const CostReport& r);
json to_json(const Evaluation& e);
json to_json(const OptimizationResult& r);
json to_json(const Runbook& rb);

json money_json(Money m);

json read_json_file(const std::filesystem::path& path);
/// Plain overwrite; atomic replacement lives in the workspace store.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace rehome
