#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rehome/forecast.hpp"
#include "rehome/topology.hpp"

namespace rehome {

/// Currency amount held as whole cents.
struct Money {
  std::int64_t cents = 0;

  static Money from_decimal(double amount);
  double to_decimal() const { return static_cast<double>(cents) / 100.0; }

  friend Money operator+(Money a, Money b) { return {a.cents + b.cents}; }
  friend Money operator-(Money a, Money b) { return {a.cents - b.cents}; }
  friend Money operator*(Money a, std::int64_t k) { return {a.cents * k}; }
  Money& operator+=(Money o) {
    cents += o.cents;
    return *this;
  }
  auto operator<=>(const Money&) const = default;
};

struct Prices {
  Money trunk_unit_price;
  Money switch_unit_price;

  bool operator==(const Prices&) const = default;
};

struct CostingOptions {
  /// When set, forecasts are taken as already headroom-adjusted and the
  /// trunk shortfall is not divided by the redundancy factor.
  bool redundancy_applied_in_forecast = false;

  bool operator==(const CostingOptions&) const = default;
};

struct ExpansionPlan {
  Id switch_id;
  int month = 0;
  std::int64_t trunks_to_add = 0;
  std::int64_t new_switch_count = 0;
  double trunks_per_new_switch = 0.0;
  bool feasible = true;

  bool operator==(const ExpansionPlan&) const = default;
};

struct CapacityBreach {
  Id switch_id;
  int month = 0;
  Phase phase = Phase::BeforeRehoming;
  std::string criterion;  // "bhca" or "ss7"
  double value = 0.0;
  double limit = 0.0;

  bool operator==(const CapacityBreach&) const = default;
};

struct CostReport {
  Money trunk_unit_price;
  Money switch_unit_price;
  Money cost_without_rehoming;
  Money cost_with_rehoming;
  Money savings;
  /// First month needing expansion, per switch, for each future.
  std::vector<ExpansionPlan> expansions_without;
  std::vector<ExpansionPlan> expansions_with;
  std::vector<CapacityBreach> breaches;

  bool operator==(const CostReport&) const = default;
};

/// Ceiling that ignores floating-point noise of up to 1e-9 relative.
std::int64_t roundup(double x);

std::int64_t trunks_needed(double forecast_trunks, const SwitchCapacity& cap,
                           bool redundancy_applied_in_forecast = false);

std::int64_t new_switches_needed(std::int64_t trunks_to_add, const SwitchCapacity& cap,
                                 std::int64_t n_existing);

struct TrunkSpread {
  double trunks_per_switch = 0.0;
  bool feasible = true;
};

TrunkSpread trunks_per_new_switch(std::int64_t trunks_to_add, const SwitchCapacity& cap,
                                  std::int64_t n_existing, std::int64_t n_new);

/// Trunk shortfall, new switch count and spread for one month of one switch.
ExpansionPlan plan_expansion(const Id& switch_id, const MonthUtilization& month,
                             const SwitchCapacity& cap, const CostingOptions& options,
                             std::int64_t n_existing = 1);

/// First month of the series that needs trunks or switches added.
std::optional<ExpansionPlan> first_expansion(const UtilizationSeries& series,
                                             const SwitchCapacity& cap,
                                             const CostingOptions& options);

Money expansion_cost(const ExpansionPlan& plan, const Prices& prices);

/// First month where trunks, BHCA or SS7 reaches redundancy x installed
/// capacity: the month in which a re-homing should be executed. Criteria
/// with zero installed capacity are not tracked.
std::optional<int> headroom_breach_month(const UtilizationSeries& series,
                                         const SwitchCapacity& cap);

/// Largest of trunk, BHCA and SS7 load relative to maximum capacity.
double utilization_ratio(const MonthUtilization& month, const SwitchCapacity& cap);

/// Prices the first expansion of each future and flags months where BHCA or
/// SS7 exceeds redundancy x maximum capacity.
CostReport compare_futures(const UtilizationSeries& without, const UtilizationSeries& with,
                           const SwitchCapacity& cap, const Prices& prices,
                           const CostingOptions& options);

/// Sums per-switch reports into one; detail lists are concatenated.
CostReport combine_reports(const std::vector<CostReport>& reports, const Prices& prices);

}  // namespace rehome
