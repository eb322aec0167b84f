#include "rehome/topology.hpp"

#include <map>

namespace rehome {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound: return "not-found";
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::InvalidModel: return "invalid-model";
    case ErrorCode::Parse: return "parse-error";
    case ErrorCode::Unclassifiable: return "unclassifiable";
    case ErrorCode::InvalidScenario: return "invalid-scenario";
    case ErrorCode::InfeasibleDelta: return "infeasible-delta";
    case ErrorCode::InvalidBaseline: return "invalid-baseline";
    case ErrorCode::InvalidComparison: return "invalid-comparison";
    case ErrorCode::IncompletePlan: return "incomplete-plan";
    case ErrorCode::Storage: return "storage-error";
  }
  return "unknown";
}

std::string_view to_string(SwitchKind kind) {
  return kind == SwitchKind::Mgw3G ? "Mgw3G" : "Msc2G";
}

std::string_view to_string(ControllerKind kind) {
  return kind == ControllerKind::Rnc ? "Rnc" : "Bsc";
}

NetworkTopology::NetworkTopology(std::vector<Market> markets, std::vector<Mss> mss,
                                 std::vector<SwitchNode> switches,
                                 std::vector<ControllerNode> controllers)
    : markets_(std::move(markets)),
      mss_(std::move(mss)),
      switches_(std::move(switches)),
      controllers_(std::move(controllers)) {
  build_indices();
}

void NetworkTopology::build_indices() {
  // First occurrence wins; duplicates are reported by validate_topology.
  for (std::size_t i = 0; i < markets_.size(); ++i) market_index_.try_emplace(markets_[i].id, i);
  for (std::size_t i = 0; i < mss_.size(); ++i) mss_index_.try_emplace(mss_[i].id, i);
  for (std::size_t i = 0; i < switches_.size(); ++i) switch_index_.try_emplace(switches_[i].id, i);
  for (std::size_t i = 0; i < controllers_.size(); ++i)
    controller_index_.try_emplace(controllers_[i].id, i);
}

namespace {

template <typename T>
const T* lookup(const std::unordered_map<Id, std::size_t>& index, const std::vector<T>& items,
                const Id& id) {
  auto it = index.find(id);
  return it == index.end() ? nullptr : &items[it->second];
}

}  // namespace

const Market* NetworkTopology::find_market(const Id& id) const {
  return lookup(market_index_, markets_, id);
}
const Mss* NetworkTopology::find_mss(const Id& id) const { return lookup(mss_index_, mss_, id); }
const SwitchNode* NetworkTopology::find_switch(const Id& id) const {
  return lookup(switch_index_, switches_, id);
}
const ControllerNode* NetworkTopology::find_controller(const Id& id) const {
  return lookup(controller_index_, controllers_, id);
}

const SwitchNode& NetworkTopology::switch_at(const Id& id) const {
  if (const auto* s = find_switch(id)) return *s;
  throw PlannerError(ErrorCode::NotFound, "unknown switch '" + id + "'");
}

const ControllerNode& NetworkTopology::controller_at(const Id& id) const {
  if (const auto* c = find_controller(id)) return *c;
  throw PlannerError(ErrorCode::NotFound, "unknown controller '" + id + "'");
}

NetworkTopology NetworkTopology::with_homing(const Id& controller_id, IdSet homes) const {
  auto controllers = controllers_;
  bool found = false;
  for (auto& c : controllers) {
    if (c.id == controller_id) {
      c.homed_to = std::move(homes);
      found = true;
      break;
    }
  }
  if (!found) throw PlannerError(ErrorCode::NotFound, "unknown controller '" + controller_id + "'");
  return NetworkTopology(markets_, mss_, switches_, std::move(controllers));
}

namespace {

void check_capacity(const SwitchNode& s, std::vector<Violation>& out) {
  const auto& c = s.capacity;
  auto bound = [&](bool ok, const char* what) {
    if (!ok) out.push_back({s.id, "capacity-bounds", std::string(what) + " installed exceeds maximum or is negative"});
  };
  bound(c.bhca_installed >= 0 && c.bhca_installed <= c.bhca_max, "BHCA");
  bound(c.trunks_installed >= 0 && c.trunks_installed <= c.trunks_max, "trunk");
  bound(c.ss7_installed >= 0 && c.ss7_installed <= c.ss7_max, "SS7");
  if (c.trunks_per_card < 1) out.push_back({s.id, "trunks-per-card", "trunks_per_card must be at least 1"});
  if (!(c.redundancy_factor > 0.0 && c.redundancy_factor <= 1.0))
    out.push_back({s.id, "redundancy-factor", "redundancy_factor must lie in (0, 1]"});
}

void check_controller(const NetworkTopology& t, const ControllerNode& c,
                      std::vector<Violation>& out) {
  if (c.trunks < 0 || !(c.traffic_erlang >= 0.0))
    out.push_back({c.id, "negative-load", "trunks and traffic_erlang must be non-negative"});
  if (c.homed_to.empty()) {
    out.push_back({c.id, "empty-homing", "controller must home to at least one switch"});
    return;
  }

  std::vector<const SwitchNode*> homes;
  for (const auto& sid : c.homed_to) {
    const auto* s = t.find_switch(sid);
    if (!s) {
      out.push_back({c.id, "unknown-switch", "homed to unknown switch '" + sid + "'"});
      continue;
    }
    homes.push_back(s);
  }
  if (homes.empty()) return;

  std::set<Id> markets;
  std::set<Id> mss_ids;
  bool any_mgw = false;
  bool any_msc = false;
  for (const auto* s : homes) {
    markets.insert(s->market_id);
    if (s->kind == SwitchKind::Mgw3G) {
      any_mgw = true;
      if (s->mss_id) mss_ids.insert(*s->mss_id);
    } else {
      any_msc = true;
    }
  }

  if (c.kind == ControllerKind::Rnc && any_msc)
    out.push_back({c.id, "rnc-must-home-to-mgw", "RNC must home to MGW"});
  if (markets.size() > 1)
    out.push_back({c.id, "homing-cross-market", "homing set spans more than one market"});
  if (homes.size() > 1) {
    if (any_mgw && any_msc) {
      out.push_back({c.id, "mixed-kind-homing", "homing set mixes 2G MSC and 3G MGW"});
    } else if (any_msc) {
      out.push_back({c.id, "multi-homing-requires-mgw", "multi-homing is only defined over MGWs"});
    } else if (mss_ids.size() > 1) {
      out.push_back({c.id, "multi-homing-single-mss", "multi-homing must stay under one MSS"});
    }
  }
}

}  // namespace

std::vector<Violation> validate_topology(const NetworkTopology& t) {
  std::vector<Violation> out;

  std::map<Id, int> seen;
  auto note = [&](const Id& id) { ++seen[id]; };
  for (const auto& m : t.markets()) note(m.id);
  for (const auto& m : t.mss()) note(m.id);
  for (const auto& s : t.switches()) note(s.id);
  for (const auto& c : t.controllers()) note(c.id);
  for (const auto& [id, count] : seen) {
    if (count > 1) out.push_back({id, "duplicate-id", "identifier used by more than one node"});
  }

  // MGW -> MSS ids that list it.
  std::map<Id, std::set<Id>> controllers_of;
  for (const auto& m : t.mss()) {
    for (const auto& mgw : m.controlled_mgw_ids) {
      const auto* s = t.find_switch(mgw);
      if (!s) {
        out.push_back({m.id, "unknown-mgw", "controls unknown MGW '" + mgw + "'"});
      } else if (s->kind != SwitchKind::Mgw3G) {
        out.push_back({m.id, "mss-controls-non-mgw", "controls '" + mgw + "' which is not an MGW"});
      } else {
        controllers_of[mgw].insert(m.id);
      }
    }
  }

  for (const auto& s : t.switches()) {
    if (!t.find_market(s.market_id))
      out.push_back({s.id, "unknown-market", "market '" + s.market_id + "' does not exist"});
    if (s.kind == SwitchKind::Mgw3G) {
      const auto& owners = controllers_of[s.id];
      if (!s.mss_id) {
        out.push_back({s.id, "mgw-requires-mss", "MGW must name its controlling MSS"});
      } else if (!t.find_mss(*s.mss_id)) {
        out.push_back({s.id, "unknown-mss", "MSS '" + *s.mss_id + "' does not exist"});
      } else if (owners.size() != 1 || !owners.contains(*s.mss_id)) {
        out.push_back({s.id, "mss-link-mismatch", "MGW must be controlled by exactly its own MSS"});
      }
    } else if (s.mss_id) {
      out.push_back({s.id, "msc-has-no-mss", "2G MSC must not name an MSS"});
    }
    check_capacity(s, out);
  }

  for (const auto& c : t.controllers()) check_controller(t, c, out);
  return out;
}

IdSet switches_in_market(const NetworkTopology& t, const Id& mss_id, const Id& market_id) {
  const auto* mss = t.find_mss(mss_id);
  if (!mss) throw PlannerError(ErrorCode::NotFound, "unknown MSS '" + mss_id + "'");
  if (!t.find_market(market_id))
    throw PlannerError(ErrorCode::NotFound, "unknown market '" + market_id + "'");
  IdSet out;
  for (const auto& id : mss->controlled_mgw_ids) {
    const auto* s = t.find_switch(id);
    if (s && s->kind == SwitchKind::Mgw3G && s->market_id == market_id) out.insert(id);
  }
  return out;
}

}  // namespace rehome
