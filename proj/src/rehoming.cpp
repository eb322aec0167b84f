#include "rehome/rehoming.hpp"

#include <algorithm>
#include <cmath>

namespace rehome {

std::string_view to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::Single2gMsc: return "Single2gMsc";
    case GroupKind::Single3gMgw: return "Single3gMgw";
    case GroupKind::Multi3gMgw: return "Multi3gMgw";
  }
  return "unknown";
}

std::string_view to_string(DeltaSign sign) {
  return sign == DeltaSign::SourceLoses ? "SourceLoses" : "TargetGains";
}

IdSet source_switches(const RehomingScenario& scenario, const NetworkTopology& topology) {
  IdSet out;
  for (const auto& id : scenario.moved_controllers) {
    if (const auto* c = topology.find_controller(id)) out.insert(c->homed_to.begin(), c->homed_to.end());
  }
  return out;
}

int model_number(GroupKind source, GroupKind target) {
  using enum GroupKind;
  // Rows: source kind. Columns: target kind (Single2gMsc, Single3gMgw, Multi3gMgw).
  static constexpr int table[3][3] = {
      {2, 4, 5},  // Single2gMsc
      {3, 1, 6},  // Single3gMgw
      {7, 8, 9},  // Multi3gMgw
  };
  return table[static_cast<int>(source)][static_cast<int>(target)];
}

namespace {

struct GroupShape {
  std::size_t mgw = 0;
  std::size_t msc = 0;
  std::size_t unknown = 0;
};

GroupShape shape_of(const IdSet& ids, const NetworkTopology& t) {
  GroupShape g;
  for (const auto& id : ids) {
    const auto* s = t.find_switch(id);
    if (!s) ++g.unknown;
    else if (s->kind == SwitchKind::Mgw3G) ++g.mgw;
    else ++g.msc;
  }
  return g;
}

GroupKind group_kind(const GroupShape& g, std::string_view side) {
  const std::string label(side);
  if (g.unknown > 0) throw PlannerError(ErrorCode::Unclassifiable, label + " set names unknown switches");
  if (g.mgw == 0 && g.msc == 0) throw PlannerError(ErrorCode::Unclassifiable, "empty " + label + " set");
  if (g.mgw > 0 && g.msc > 0)
    throw PlannerError(ErrorCode::Unclassifiable, "mixed-kind " + label + " set (2G MSC and 3G MGW)");
  if (g.msc > 1)
    throw PlannerError(ErrorCode::Unclassifiable, "multiple 2G MSC " + label + " switches");
  if (g.msc == 1) return GroupKind::Single2gMsc;
  return g.mgw == 1 ? GroupKind::Single3gMgw : GroupKind::Multi3gMgw;
}

}  // namespace

ModelClassification classify(const RehomingScenario& scenario, const NetworkTopology& topology) {
  const auto sources = source_switches(scenario, topology);
  ModelClassification c;
  c.source_kind = group_kind(shape_of(sources, topology), "source");
  c.target_kind = group_kind(shape_of(scenario.target_switch_ids, topology), "target");
  c.model_number = model_number(c.source_kind, c.target_kind);
  return c;
}

std::vector<Violation> validate_scenario(const RehomingScenario& scenario,
                                         const NetworkTopology& topology) {
  std::vector<Violation> out;
  const std::string scenario_id = "scenario";

  if (scenario.moved_controllers.empty())
    out.push_back({scenario_id, "empty-move", "no controllers to move"});
  if (scenario.target_switch_ids.empty())
    out.push_back({scenario_id, "empty-target", "no target switches"});
  if (scenario.rehoming_month < 1)
    out.push_back({scenario_id, "rehoming-month", "rehoming_month must be at least 1"});

  std::vector<const ControllerNode*> moved;
  IdSet seen_moved;
  for (const auto& id : scenario.moved_controllers) {
    if (!seen_moved.insert(id).second) {
      out.push_back({id, "duplicate-move", "controller listed more than once"});
      continue;
    }
    const auto* c = topology.find_controller(id);
    if (!c) out.push_back({id, "unknown-controller", "controller does not exist"});
    else moved.push_back(c);
  }
  bool targets_known = true;
  for (const auto& id : scenario.target_switch_ids) {
    if (!topology.find_switch(id)) {
      out.push_back({id, "unknown-switch", "target switch does not exist"});
      targets_known = false;
    }
  }
  if (moved.empty() || scenario.target_switch_ids.empty() || !targets_known) return out;

  for (const auto* c : moved) {
    if (c->homed_to != moved.front()->homed_to) {
      out.push_back({c->id, "mixed-source-homing",
                     "moved controllers must share one current homing set"});
    }
  }

  const auto sources = source_switches(scenario, topology);
  for (const auto& id : sources) {
    if (scenario.target_switch_ids.contains(id))
      out.push_back({id, "source-target-overlap", "switch is both source and target"});
  }

  const auto src_shape = shape_of(sources, topology);
  const auto tgt_shape = shape_of(scenario.target_switch_ids, topology);
  if (src_shape.unknown > 0) return out;  // topology itself is broken
  if (src_shape.mgw > 0 && src_shape.msc > 0)
    out.push_back({scenario_id, "mixed-kind-source", "source set mixes 2G MSC and 3G MGW"});
  else if (src_shape.msc > 1)
    out.push_back({scenario_id, "multiple-msc-source", "more than one 2G MSC source"});
  if (tgt_shape.mgw > 0 && tgt_shape.msc > 0)
    out.push_back({scenario_id, "mixed-kind-target", "target set mixes 2G MSC and 3G MGW"});
  else if (tgt_shape.msc > 1)
    out.push_back({scenario_id, "multiple-msc-target", "more than one 2G MSC target"});

  if (tgt_shape.msc > 0) {
    for (const auto* c : moved) {
      if (c->kind == ControllerKind::Rnc)
        out.push_back({c->id, "rnc-must-home-to-mgw", "RNC must home to MGW"});
    }
  }

  // Market scope: everything involved sits in the sources' market.
  std::set<Id> markets;
  for (const auto& id : sources) markets.insert(topology.switch_at(id).market_id);
  const Id home_market = markets.empty() ? Id{} : *markets.begin();
  for (const auto& id : scenario.target_switch_ids) {
    const auto& s = topology.switch_at(id);
    if (s.market_id != home_market) {
      out.push_back({id, "scope",
                     "target lies in market '" + s.market_id + "' outside source market '" +
                         home_market + "'"});
    }
  }
  if (markets.size() > 1)
    out.push_back({scenario_id, "scope", "source switches span more than one market"});

  // Principle 1: no move between MGWs of the same MSS.
  std::set<Id> source_mss;
  for (const auto& id : sources) {
    const auto& s = topology.switch_at(id);
    if (s.mss_id) source_mss.insert(*s.mss_id);
  }
  std::set<Id> target_mss;
  for (const auto& id : scenario.target_switch_ids) {
    const auto& s = topology.switch_at(id);
    if (!s.mss_id) continue;
    target_mss.insert(*s.mss_id);
    if (source_mss.contains(*s.mss_id)) {
      out.push_back({id, "principle-1",
                     "target MGW shares MSS '" + *s.mss_id + "' with a source MGW"});
    }
  }

  // Principle 2: the load spreads over all in-market MGWs of one target MSS.
  if (target_mss.size() > 1) {
    out.push_back({scenario_id, "principle-2", "target MGWs must all belong to one MSS"});
  } else if (target_mss.size() == 1 && !source_mss.contains(*target_mss.begin()) &&
             topology.find_market(home_market) && topology.find_mss(*target_mss.begin())) {
    const auto expected = switches_in_market(topology, *target_mss.begin(), home_market);
    for (const auto& id : expected) {
      if (!scenario.target_switch_ids.contains(id)) {
        out.push_back({id, "principle-2",
                       "target set omits in-market MGW '" + id + "' of MSS '" +
                           *target_mss.begin() + "'"});
      }
    }
  }
  return out;
}

std::vector<TrafficDelta> compute_deltas(const RehomingScenario& scenario,
                                         const NetworkTopology& topology) {
  auto violations = validate_scenario(scenario, topology);
  if (!violations.empty()) {
    throw PlannerError(ErrorCode::InvalidScenario, "scenario violates re-homing rules",
                       std::move(violations));
  }

  double erlang = 0.0;
  double trunks = 0.0;
  for (const auto& id : scenario.moved_controllers) {
    const auto& c = topology.controller_at(id);
    erlang += c.traffic_erlang;
    trunks += static_cast<double>(c.trunks);
  }

  const auto sources = source_switches(scenario, topology);
  const auto n_source = static_cast<double>(sources.size());
  const auto n_target = static_cast<double>(scenario.target_switch_ids.size());

  std::vector<TrafficDelta> out;
  out.reserve(sources.size() + scenario.target_switch_ids.size());
  for (const auto& id : sources)
    out.push_back({id, -erlang / n_source, -trunks / n_source, DeltaSign::SourceLoses});
  for (const auto& id : scenario.target_switch_ids)
    out.push_back({id, erlang / n_target, trunks / n_target, DeltaSign::TargetGains});
  return out;
}

UtilizationSeries forecast_after(const UtilizationSeries& before, const TrafficDelta& delta,
                                 int effective_month, const Ss7Model& ss7) {
  if (delta.switch_id != before.switch_id) {
    throw PlannerError(ErrorCode::InvalidInput, "delta for '" + delta.switch_id +
                                                    "' applied to series of '" +
                                                    before.switch_id + "'");
  }
  if (effective_month < 2)
    throw PlannerError(ErrorCode::InvalidInput, "re-homing effects start no earlier than month 2");
  if (before.months.empty())
    throw PlannerError(ErrorCode::InvalidBaseline, "series for '" + before.switch_id + "' is empty");

  // Anchored on the first month of the loaded series.
  const auto& anchor = before.months.front();
  if (!(anchor.traffic_erlang > 0.0) || !(anchor.bhca > 0.0)) {
    throw PlannerError(ErrorCode::InvalidBaseline,
                       "month-1 traffic and BHCA of '" + before.switch_id + "' must be positive");
  }

  UtilizationSeries after = before;
  after.phase = Phase::AfterRehoming;
  for (auto& m : after.months) {
    if (m.n < effective_month) continue;
    double traffic = m.traffic_erlang + delta.erlang_delta;
    double trunks = m.trunks + delta.trunk_delta;
    // Exact cancellation can leave rounding noise just below zero.
    if (traffic < 0.0 && traffic > -1e-9 * std::abs(m.traffic_erlang)) traffic = 0.0;
    if (trunks < 0.0 && trunks > -1e-9 * std::abs(m.trunks)) trunks = 0.0;
    if (traffic < 0.0 || trunks < 0.0) {
      throw PlannerError(ErrorCode::InfeasibleDelta,
                         "delta drives month " + std::to_string(m.n) + " of '" +
                             before.switch_id + "' below zero");
    }
    m.traffic_erlang = traffic;
    m.bhca = anchor.bhca * traffic / anchor.traffic_erlang;
    m.trunks = trunks;
    m.ss7_util = forecast_ss7(m.bhca, ss7);
  }
  return after;
}

}  // namespace rehome
