#include "support.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#ifndef REHOME_FIXTURE_DIR
#error "REHOME_FIXTURE_DIR must point at the fixtures directory"
#endif

namespace rehome::testing {

namespace {

using big = boost::multiprecision::cpp_bin_float_50;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int pick(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

template <typename T>
const T& choose(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(v.size()) - 1))];
}

SwitchCapacity random_capacity(std::mt19937_64& rng) {
  SwitchCapacity c;
  c.trunks_installed = pick(rng, 1000, 3000);
  c.trunks_max = c.trunks_installed + pick(rng, 0, 2000);
  c.bhca_installed = 2e6;
  c.bhca_max = 4e6;
  c.ss7_installed = 1.0;
  c.ss7_max = 1.0;
  c.trunks_per_card = choose(rng, std::vector<std::int64_t>{1, 1, 8, 16});
  c.redundancy_factor = uniform(rng, 0.75, 1.0);
  return c;
}

ControllerNode make_controller(const std::string& id, ControllerKind kind, IdSet homes,
                               std::int64_t trunks, double traffic) {
  ControllerNode c;
  c.id = id;
  c.kind = kind;
  c.homed_to = std::move(homes);
  c.trunks = trunks;
  c.traffic_erlang = traffic;
  return c;
}

PlannerConfig instance_config() {
  PlannerConfig c;
  c.traffic.erlang_per_subscriber = 0.0168;
  c.traffic.mean_call_seconds = 90;
  c.traffic.channel_loading = 0.7;
  c.ss7.link_count = 64;
  c.prices = {Money::from_decimal(1000.0), Money::from_decimal(1000000.0)};
  c.costing.redundancy_applied_in_forecast = true;
  return c;
}

SubscriberForecast growing_forecast(const Id& id, double start, double growth, int months) {
  SubscriberForecast f;
  f.switch_id = id;
  double ns = start;
  for (int n = 1; n <= months; ++n) {
    f.months.push_back({n, std::round(ns), std::nullopt});
    ns *= 1.0 + growth;
  }
  return f;
}

}  // namespace

std::filesystem::path fixture_path(const std::string& relative) {
  return std::filesystem::path(REHOME_FIXTURE_DIR) / relative;
}

Inputs load_inputs(const std::string& fixture_dir) {
  const auto dir = fixture_path(fixture_dir);
  return {parse_topology(read_json_file(dir / "topology.json")),
          parse_forecasts(read_json_file(dir / "forecast.json")),
          parse_config(read_json_file(dir / "config.json"))};
}

RehomingScenario load_scenario(const std::string& relative) {
  return parse_scenario(read_json_file(fixture_path(relative)));
}

double erlang_b_oracle(double offered_erlang, std::int64_t lines) {
  const big e(offered_erlang);
  big term = 1;  // E^k / k!
  big sum = 1;
  for (std::int64_t k = 1; k <= lines; ++k) {
    term = term * e / big(k);
    sum += term;
  }
  return static_cast<double>(term / sum);
}

std::int64_t erlang_b_lines_oracle(double offered_erlang, double target) {
  if (offered_erlang == 0.0) return 0;
  std::int64_t m = 0;
  while (erlang_b_oracle(offered_erlang, m) > target) ++m;
  return m;
}

NetworkTopology random_topology(std::mt19937_64& rng) {
  std::vector<Market> markets{{"M1", "Market 1"}};
  if (pick(rng, 0, 1) == 1) markets.push_back({"M2", "Market 2"});

  std::vector<Mss> mss;
  std::vector<SwitchNode> switches;
  std::map<Id, std::vector<Id>> mgws_by_mss_market;  // key: mss|market
  std::map<Id, std::vector<Id>> mscs_by_market;
  std::map<Id, std::vector<Id>> mgws_by_market;

  auto add_mgw = [&](Mss& owner, const Id& market) {
    SwitchNode s;
    s.id = "MGW-" + std::to_string(switches.size() + 1);
    s.kind = SwitchKind::Mgw3G;
    s.market_id = market;
    s.mss_id = owner.id;
    s.capacity = random_capacity(rng);
    owner.controlled_mgw_ids.insert(s.id);
    mgws_by_mss_market[owner.id + "|" + market].push_back(s.id);
    mgws_by_market[market].push_back(s.id);
    switches.push_back(std::move(s));
  };

  for (const auto& m : markets) {
    const int n_mss = pick(rng, 1, 3);
    for (int k = 0; k < n_mss; ++k) {
      Mss owner{"MSS-" + std::to_string(mss.size() + 1), {}};
      const int n_mgw = pick(rng, 1, 3);
      for (int g = 0; g < n_mgw; ++g) add_mgw(owner, m.id);
      mss.push_back(std::move(owner));
    }
    const int n_msc = pick(rng, 0, 2);
    for (int k = 0; k < n_msc; ++k) {
      SwitchNode s;
      s.id = "MSC-" + std::to_string(switches.size() + 1);
      s.kind = SwitchKind::Msc2G;
      s.market_id = m.id;
      s.capacity = random_capacity(rng);
      mscs_by_market[m.id].push_back(s.id);
      switches.push_back(std::move(s));
    }
  }
  // An MSS that also serves the other market.
  if (markets.size() == 2 && pick(rng, 0, 2) == 0) add_mgw(mss.front(), "M2");

  std::vector<ControllerNode> controllers;
  const int n_ctl = pick(rng, 2, 8);
  for (int k = 0; k < n_ctl; ++k) {
    const auto& market = choose(rng, markets).id;
    std::vector<Id> multi_groups;
    for (const auto& [key, ids] : mgws_by_mss_market)
      if (ids.size() >= 2 && key.substr(key.find('|') + 1) == market) multi_groups.push_back(key);

    const bool bsc = pick(rng, 0, 1) == 1;
    IdSet homes;
    const int shape = pick(rng, 0, 2);
    if (bsc && shape == 0 && !mscs_by_market[market].empty()) {
      homes.insert(choose(rng, mscs_by_market[market]));
    } else if (shape == 2 && !multi_groups.empty()) {
      const auto& ids = mgws_by_mss_market[choose(rng, multi_groups)];
      homes.insert(ids.begin(), ids.end());
      if (ids.size() > 2 && pick(rng, 0, 1) == 1) homes.erase(ids.back());
    } else {
      homes.insert(choose(rng, mgws_by_market[market]));
    }
    const auto trunks = static_cast<std::int64_t>(pick(rng, 5, 200));
    const double traffic = static_cast<double>(trunks) * 16.8 * uniform(rng, 0.8, 1.2);
    controllers.push_back(make_controller((bsc ? "BSC-" : "RNC-") + std::to_string(k + 1),
                                          bsc ? ControllerKind::Bsc : ControllerKind::Rnc,
                                          std::move(homes), trunks, traffic));
  }
  return NetworkTopology(std::move(markets), std::move(mss), std::move(switches),
                         std::move(controllers));
}

RehomingScenario random_scenario(const NetworkTopology& topology, std::mt19937_64& rng) {
  RehomingScenario s;
  s.rehoming_month = pick(rng, 1, 6);
  const auto& controllers = topology.controllers();
  const auto& first = choose(rng, controllers);
  s.moved_controllers.push_back(first.id);
  if (pick(rng, 0, 4) == 0) {
    for (const auto& c : controllers)
      if (c.id != first.id && c.homed_to == first.homed_to) {
        s.moved_controllers.push_back(c.id);
        break;
      }
  }
  const auto& home = topology.switch_at(*first.homed_to.begin());
  const int shape = pick(rng, 0, 9);
  if (shape < 6) {
    const auto& owner = choose(rng, topology.mss());
    s.target_switch_ids = switches_in_market(topology, owner.id, home.market_id);
  } else if (shape < 8) {
    for (const auto& sw : topology.switches())
      if (sw.kind == SwitchKind::Msc2G && sw.market_id == home.market_id &&
          !first.homed_to.contains(sw.id))
        s.target_switch_ids.insert(sw.id);
    if (s.target_switch_ids.size() > 1) {
      const auto keep = *s.target_switch_ids.begin();
      s.target_switch_ids = {keep};
    }
  } else {
    for (const auto& sw : topology.switches())
      if (pick(rng, 0, 2) == 0) s.target_switch_ids.insert(sw.id);
  }
  return s;
}

OptimizationRequest random_instance(std::mt19937_64& rng, int max_moves) {
  const int n_switches = pick(rng, 2, 3);
  std::vector<Market> markets{{"M1", "Market 1"}};
  std::vector<Mss> mss;
  std::vector<SwitchNode> switches;
  for (int k = 0; k < n_switches; ++k) {
    SwitchNode s;
    s.id = "SW-" + std::to_string(k + 1);
    s.market_id = "M1";
    s.capacity = random_capacity(rng);
    s.capacity.redundancy_factor = 0.85;
    const bool msc = k > 0 && pick(rng, 0, 3) == 0;
    if (msc) {
      s.kind = SwitchKind::Msc2G;
    } else {
      s.kind = SwitchKind::Mgw3G;
      // Sometimes two MGWs share an MSS, which makes a multi-MGW target.
      if (!mss.empty() && pick(rng, 0, 2) == 0) {
        s.mss_id = mss.back().id;
      } else {
        mss.push_back({"MSS-" + std::to_string(mss.size() + 1), {}});
        s.mss_id = mss.back().id;
      }
      for (auto& m : mss)
        if (m.id == *s.mss_id) m.controlled_mgw_ids.insert(s.id);
    }
    switches.push_back(std::move(s));
  }

  std::vector<Id> mgws;
  for (const auto& s : switches)
    if (s.kind == SwitchKind::Mgw3G) mgws.push_back(s.id);

  std::vector<ControllerNode> controllers;
  std::map<Id, double> homed_trunks;
  const int n_ctl = pick(rng, 2, 6);
  for (int k = 0; k < n_ctl; ++k) {
    const auto& home = choose(rng, switches);
    const bool bsc = home.kind == SwitchKind::Msc2G || pick(rng, 0, 1) == 1;
    const auto trunks = static_cast<std::int64_t>(pick(rng, 20, 400));
    controllers.push_back(make_controller((bsc ? "BSC-" : "RNC-") + std::to_string(k + 1),
                                          bsc ? ControllerKind::Bsc : ControllerKind::Rnc,
                                          {home.id}, trunks, static_cast<double>(trunks) * 16.8));
    homed_trunks[home.id] += static_cast<double>(trunks);
  }

  OptimizationRequest r;
  r.config = instance_config();
  r.config.costing.redundancy_applied_in_forecast = pick(rng, 0, 1) == 1;
  double all_trunks = 0.0;
  for (const auto& c : controllers) all_trunks += static_cast<double>(c.trunks);
  for (auto& s : switches) {
    // Month-1 trunks cover the switch's own controllers plus any that could
    // leave it, so every single move keeps loads non-negative.
    const double base = all_trunks + uniform(rng, 100.0, 900.0);
    s.capacity.trunks_installed = static_cast<std::int64_t>(base * uniform(rng, 0.9, 1.6));
    s.capacity.trunks_max = s.capacity.trunks_installed + pick(rng, 200, 1500);
    r.forecasts.push_back(growing_forecast(s.id, base * 1000.0, uniform(rng, 0.0, 0.05), 12));
  }
  r.topology = NetworkTopology(std::move(markets), std::move(mss), std::move(switches),
                               std::move(controllers));
  r.max_moves = max_moves;
  r.objective = pick(rng, 0, 1) == 0 ? Objective::MinCost : Objective::MinPeakUtilization;
  return r;
}

OptimizationRequest bench_instance(std::uint64_t seed, int n_switches, int n_controllers,
                                   int months) {
  std::mt19937_64 rng(seed);
  std::vector<Market> markets{{"M1", "Market 1"}};
  std::vector<Mss> mss;
  std::vector<SwitchNode> switches;
  for (int k = 0; k < n_switches; ++k) {
    SwitchNode s;
    s.id = "MGW-" + std::to_string(k + 1);
    s.kind = SwitchKind::Mgw3G;
    s.market_id = "M1";
    s.capacity = random_capacity(rng);
    s.capacity.trunks_per_card = 1;
    if (k % 2 == 1 && pick(rng, 0, 1) == 1) {
      s.mss_id = mss.back().id;
    } else {
      mss.push_back({"MSS-" + std::to_string(mss.size() + 1), {}});
      s.mss_id = mss.back().id;
    }
    mss.back().controlled_mgw_ids.insert(s.id);
    switches.push_back(std::move(s));
  }
  std::vector<ControllerNode> controllers;
  double all_trunks = 0.0;
  for (int k = 0; k < n_controllers; ++k) {
    const auto trunks = static_cast<std::int64_t>(pick(rng, 20, 200));
    all_trunks += static_cast<double>(trunks);
    controllers.push_back(make_controller("RNC-" + std::to_string(k + 1), ControllerKind::Rnc,
                                          {choose(rng, switches).id}, trunks,
                                          static_cast<double>(trunks) * 16.8));
  }
  OptimizationRequest r;
  r.config = instance_config();
  for (auto& s : switches) {
    const double base = all_trunks + uniform(rng, 100.0, 900.0);
    s.capacity.trunks_installed = static_cast<std::int64_t>(base * uniform(rng, 0.9, 1.4));
    s.capacity.trunks_max = s.capacity.trunks_installed + 1000;
    r.forecasts.push_back(growing_forecast(s.id, base * 1000.0, uniform(rng, 0.0, 0.04), months));
  }
  r.topology = NetworkTopology(std::move(markets), std::move(mss), std::move(switches),
                               std::move(controllers));
  return r;
}

NetworkTopology rename_topology(const NetworkTopology& t, const std::function<Id(const Id&)>& f) {
  auto rename_set = [&](const IdSet& ids) {
    IdSet out;
    for (const auto& id : ids) out.insert(f(id));
    return out;
  };
  std::vector<Market> markets;
  for (const auto& m : t.markets()) markets.push_back({f(m.id), m.name});
  std::vector<Mss> mss;
  for (const auto& m : t.mss()) mss.push_back({f(m.id), rename_set(m.controlled_mgw_ids)});
  std::vector<SwitchNode> switches;
  for (auto s : t.switches()) {
    s.id = f(s.id);
    s.market_id = f(s.market_id);
    if (s.mss_id) s.mss_id = f(*s.mss_id);
    switches.push_back(std::move(s));
  }
  std::vector<ControllerNode> controllers;
  for (auto c : t.controllers()) {
    c.id = f(c.id);
    c.homed_to = rename_set(c.homed_to);
    controllers.push_back(std::move(c));
  }
  return NetworkTopology(std::move(markets), std::move(mss), std::move(switches),
                         std::move(controllers));
}

}  // namespace rehome::testing
