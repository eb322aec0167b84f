#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rehome/planner.hpp"

namespace rehome {

enum class Objective { MinCost, MinPeakUtilization };
enum class Backend { Auto, Greedy, Exhaustive };

/// Serial is the reference path; Parallel evaluates plans with OpenMP and
/// merges them in candidate order, so both return identical results.
enum class ExecutionPolicy { Serial, Parallel };

std::string_view to_string(Objective objective);
std::string_view to_string(Backend backend);

struct OptimizationRequest {
  NetworkTopology topology;
  std::vector<SubscriberForecast> forecasts;
  PlannerConfig config;
  std::optional<int> horizon;  // months from the start of each forecast; all when unset
  Objective objective = Objective::MinCost;
  double load_threshold = 0.8;
  int max_moves = 1;
  std::size_t exhaustive_bound = 10000;
  Backend backend = Backend::Auto;
  /// Execution month for every move. Defaults to the first month any switch
  /// reaches its headroom limit, or month 1 when none does.
  std::optional<int> rehoming_month;
};

struct SwitchPeak {
  Id switch_id;
  double peak_utilization = 0.0;

  bool operator==(const SwitchPeak&) const = default;
};

/// Score of one plan, recomputed from scratch by evaluate_plan.
struct PlanScore {
  bool feasible = true;
  double objective_value = 0.0;
  double peak_utilization = 0.0;
  Money cost_with;
  std::vector<SwitchPeak> peaks;

  bool operator==(const PlanScore&) const = default;
};

struct SearchStats {
  std::size_t candidates = 0;
  std::size_t plans_examined = 0;
  std::size_t pruned = 0;

  bool operator==(const SearchStats&) const = default;
};

struct OptimizationResult {
  std::vector<RehomingScenario> scenarios;
  Backend backend_used = Backend::Greedy;
  Objective objective = Objective::MinCost;
  int rehoming_month = 1;
  PlanScore score;
  CostReport cost;
  SearchStats stats;

  bool feasible() const { return score.feasible; }
  bool operator==(const OptimizationResult&) const = default;
};

/// All single-controller moves onto an eligible in-market target set that
/// pass validate_scenario, ordered by controller id then target MSS (or MSC) id.
std::vector<RehomingScenario> enumerate_candidates(const NetworkTopology& topology,
                                                   int rehoming_month = 1);

/// Throws PlannerError(InvalidInput) for malformed requests.
void validate_request(const OptimizationRequest& request);

OptimizationResult optimize(const OptimizationRequest& request,
                            ExecutionPolicy policy = ExecutionPolicy::Parallel);

/// Replays `plan` through the re-homing engine and costing. Returns nullopt
/// when a move drives some switch's load below zero.
std::optional<PlanScore> evaluate_plan(const OptimizationRequest& request,
                                       const std::vector<RehomingScenario>& plan);

/// Rehoming month the optimizer uses for `request`.
int resolve_rehoming_month(const OptimizationRequest& request);

}  // namespace rehome
