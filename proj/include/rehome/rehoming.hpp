#pragma once

#include <string>
#include <vector>

#include "rehome/forecast.hpp"
#include "rehome/topology.hpp"

namespace rehome {

/// A proposed re-homing: which controllers move, to which switches, and the
/// month it is executed in. Effects start the following month. Source switches
/// are never supplied; they come from the controllers' current homing.
struct RehomingScenario {
  std::vector<Id> moved_controllers;
  IdSet target_switch_ids;
  int rehoming_month = 1;

  int effective_month() const { return rehoming_month + 1; }

  bool operator==(const RehomingScenario&) const = default;
};

enum class GroupKind { Single2gMsc, Single3gMgw, Multi3gMgw };

struct ModelClassification {
  int model_number = 0;
  GroupKind source_kind = GroupKind::Single3gMgw;
  GroupKind target_kind = GroupKind::Single3gMgw;

  bool operator==(const ModelClassification&) const = default;
};

enum class DeltaSign { SourceLoses, TargetGains };

struct TrafficDelta {
  Id switch_id;
  double erlang_delta = 0.0;
  double trunk_delta = 0.0;
  DeltaSign sign = DeltaSign::TargetGains;

  bool operator==(const TrafficDelta&) const = default;
};

std::string_view to_string(GroupKind kind);
std::string_view to_string(DeltaSign sign);

/// Union of the current homing sets of the moved controllers. Unknown
/// controllers are skipped.
IdSet source_switches(const RehomingScenario& scenario, const NetworkTopology& topology);

/// Model number for a (source, target) group-kind pair.
int model_number(GroupKind source, GroupKind target);

/// Throws PlannerError(Unclassifiable) naming the unsupported shape.
ModelClassification classify(const RehomingScenario& scenario, const NetworkTopology& topology);

/// Market scope, principle 1 (no move inside one MSS) and principle 2 (all
/// in-market MGWs of the target MSS share the load), plus structural checks.
std::vector<Violation> validate_scenario(const RehomingScenario& scenario,
                                         const NetworkTopology& topology);

/// Even split of the moved traffic and trunks: each source loses 1/n_source
/// of the total, each target gains 1/n_target. Sources first, then targets,
/// each sorted by id. Throws PlannerError(InvalidScenario) carrying the
/// violations when the scenario is invalid.
std::vector<TrafficDelta> compute_deltas(const RehomingScenario& scenario,
                                         const NetworkTopology& topology);

/// Applies one switch's delta from `effective_month` on. BHCA is rescaled
/// from the first month of the series; earlier months are copied unchanged.
UtilizationSeries forecast_after(const UtilizationSeries& before, const TrafficDelta& delta,
                                 int effective_month, const Ss7Model& ss7);

}  // namespace rehome
