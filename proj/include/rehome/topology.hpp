#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "rehome/errors.hpp"

namespace rehome {

using Id = std::string;
using IdSet = std::set<Id>;

struct Market {
  Id id;
  std::string name;

  bool operator==(const Market&) const = default;
};

struct Mss {
  Id id;
  IdSet controlled_mgw_ids;

  bool operator==(const Mss&) const = default;
};

enum class SwitchKind { Mgw3G, Msc2G };
enum class ControllerKind { Rnc, Bsc };

/// Installed and maximum limits of one switch for the three planning
/// criteria (BHCA, trunk ports, SS7), plus card granularity and headroom.
struct SwitchCapacity {
  double bhca_installed = 0.0;
  double bhca_max = 0.0;
  std::int64_t trunks_installed = 0;
  std::int64_t trunks_max = 0;
  double ss7_installed = 0.0;
  double ss7_max = 0.0;
  std::int64_t trunks_per_card = 1;
  double redundancy_factor = 1.0;

  bool operator==(const SwitchCapacity&) const = default;
};

struct SwitchNode {
  Id id;
  SwitchKind kind = SwitchKind::Mgw3G;
  Id market_id;
  std::optional<Id> mss_id;
  SwitchCapacity capacity;

  bool operator==(const SwitchNode&) const = default;
};

struct ControllerNode {
  Id id;
  ControllerKind kind = ControllerKind::Rnc;
  IdSet homed_to;
  std::int64_t trunks = 0;
  double traffic_erlang = 0.0;

  bool operator==(const ControllerNode&) const = default;
};

/// Immutable snapshot of the network graph. Lookups go through id indices
/// built at construction; a changed network is a new snapshot.
class NetworkTopology {
 public:
  NetworkTopology() = default;
  NetworkTopology(std::vector<Market> markets, std::vector<Mss> mss,
                  std::vector<SwitchNode> switches, std::vector<ControllerNode> controllers);

  const std::vector<Market>& markets() const noexcept { return markets_; }
  const std::vector<Mss>& mss() const noexcept { return mss_; }
  const std::vector<SwitchNode>& switches() const noexcept { return switches_; }
  const std::vector<ControllerNode>& controllers() const noexcept { return controllers_; }

  const Market* find_market(const Id& id) const;
  const Mss* find_mss(const Id& id) const;
  const SwitchNode* find_switch(const Id& id) const;
  const ControllerNode* find_controller(const Id& id) const;

  /// Throws PlannerError(NotFound) when the id is unknown.
  const SwitchNode& switch_at(const Id& id) const;
  const ControllerNode& controller_at(const Id& id) const;

  /// New snapshot with one controller re-homed to `homes`.
  NetworkTopology with_homing(const Id& controller_id, IdSet homes) const;

  bool operator==(const NetworkTopology& other) const {
    return markets_ == other.markets_ && mss_ == other.mss_ &&
           switches_ == other.switches_ && controllers_ == other.controllers_;
  }

 private:
  void build_indices();

  std::vector<Market> markets_;
  std::vector<Mss> mss_;
  std::vector<SwitchNode> switches_;
  std::vector<ControllerNode> controllers_;

  std::unordered_map<Id, std::size_t> market_index_;
  std::unordered_map<Id, std::size_t> mss_index_;
  std::unordered_map<Id, std::size_t> switch_index_;
  std::unordered_map<Id, std::size_t> controller_index_;
};

/// Checks every structural invariant of the graph. Returns an empty list for
/// a well-formed topology; each entry names the offending node and rule.
std::vector<Violation> validate_topology(const NetworkTopology& topology);

/// MGWs controlled by `mss_id` that sit in `market_id`.
IdSet switches_in_market(const NetworkTopology& topology, const Id& mss_id, const Id& market_id);

std::string_view to_string(SwitchKind kind);
std::string_view to_string(ControllerKind kind);

}  // namespace rehome
