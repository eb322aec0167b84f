#include "rehome/costing.hpp"

#include <algorithm>
#include <cmath>

namespace rehome {

Money Money::from_decimal(double amount) { return {std::llround(amount * 100.0)}; }

std::int64_t roundup(double x) {
  const double slack = 1e-9 * std::max(1.0, std::abs(x));
  return static_cast<std::int64_t>(std::ceil(x - slack));
}

std::int64_t trunks_needed(double forecast_trunks, const SwitchCapacity& cap,
                           bool redundancy_applied_in_forecast) {
  if (cap.trunks_per_card < 1)
    throw PlannerError(ErrorCode::InvalidInput, "trunks_per_card must be at least 1");
  const double factor = redundancy_applied_in_forecast ? 1.0 : cap.redundancy_factor;
  if (!(factor > 0.0)) throw PlannerError(ErrorCode::InvalidInput, "redundancy factor must be positive");
  const double shortfall = forecast_trunks / factor - static_cast<double>(cap.trunks_installed);
  const auto cards = roundup(shortfall / static_cast<double>(cap.trunks_per_card));
  return cards > 0 ? cards * cap.trunks_per_card : 0;
}

std::int64_t new_switches_needed(std::int64_t trunks_to_add, const SwitchCapacity& cap,
                                 std::int64_t n_existing) {
  if (cap.trunks_max < 1) throw PlannerError(ErrorCode::InvalidInput, "trunks_max must be positive");
  const std::int64_t total = trunks_to_add + cap.trunks_installed;
  if (static_cast<double>(total) < static_cast<double>(cap.trunks_max) * cap.redundancy_factor)
    return 0;
  const std::int64_t switches = (total + cap.trunks_max - 1) / cap.trunks_max;
  return std::max<std::int64_t>(0, switches - n_existing);
}

TrunkSpread trunks_per_new_switch(std::int64_t trunks_to_add, const SwitchCapacity& cap,
                                  std::int64_t n_existing, std::int64_t n_new) {
  if (n_existing + n_new <= 0)
    throw PlannerError(ErrorCode::InvalidInput, "no switches to spread trunks over");
  TrunkSpread spread;
  spread.trunks_per_switch = static_cast<double>(trunks_to_add + cap.trunks_installed) /
                             static_cast<double>(n_existing + n_new);
  spread.feasible = spread.trunks_per_switch <=
                    static_cast<double>(cap.trunks_max) * cap.redundancy_factor;
  return spread;
}

ExpansionPlan plan_expansion(const Id& switch_id, const MonthUtilization& month,
                             const SwitchCapacity& cap, const CostingOptions& options,
                             std::int64_t n_existing) {
  ExpansionPlan plan;
  plan.switch_id = switch_id;
  plan.month = month.n;
  plan.trunks_to_add = trunks_needed(month.trunks, cap, options.redundancy_applied_in_forecast);
  plan.new_switch_count = new_switches_needed(plan.trunks_to_add, cap, n_existing);
  const auto spread = trunks_per_new_switch(plan.trunks_to_add, cap, n_existing, plan.new_switch_count);
  plan.trunks_per_new_switch = spread.trunks_per_switch;
  plan.feasible = spread.feasible;
  return plan;
}

std::optional<ExpansionPlan> first_expansion(const UtilizationSeries& series,
                                             const SwitchCapacity& cap,
                                             const CostingOptions& options) {
  for (const auto& m : series.months) {
    auto plan = plan_expansion(series.switch_id, m, cap, options);
    if (plan.trunks_to_add > 0 || plan.new_switch_count > 0) return plan;
  }
  return std::nullopt;
}

Money expansion_cost(const ExpansionPlan& plan, const Prices& prices) {
  return prices.trunk_unit_price * plan.trunks_to_add +
         prices.switch_unit_price * plan.new_switch_count;
}

std::optional<int> headroom_breach_month(const UtilizationSeries& series,
                                         const SwitchCapacity& cap) {
  const double f = cap.redundancy_factor;
  for (const auto& m : series.months) {
    const bool trunks = cap.trunks_installed > 0 &&
                        m.trunks >= f * static_cast<double>(cap.trunks_installed);
    const bool bhca = cap.bhca_installed > 0.0 && m.bhca >= f * cap.bhca_installed;
    const bool ss7 = cap.ss7_installed > 0.0 && m.ss7_util >= f * cap.ss7_installed;
    if (trunks || bhca || ss7) return m.n;
  }
  return std::nullopt;
}

double utilization_ratio(const MonthUtilization& m, const SwitchCapacity& cap) {
  double ratio = 0.0;
  if (cap.trunks_max > 0) ratio = std::max(ratio, m.trunks / static_cast<double>(cap.trunks_max));
  if (cap.bhca_max > 0.0) ratio = std::max(ratio, m.bhca / cap.bhca_max);
  if (cap.ss7_max > 0.0) ratio = std::max(ratio, m.ss7_util / cap.ss7_max);
  return ratio;
}

namespace {

void collect_breaches(const UtilizationSeries& series, const SwitchCapacity& cap,
                      std::vector<CapacityBreach>& out) {
  const double bhca_limit = cap.bhca_max * cap.redundancy_factor;
  const double ss7_limit = cap.ss7_max * cap.redundancy_factor;
  for (const auto& m : series.months) {
    if (cap.bhca_max > 0.0 && m.bhca > bhca_limit)
      out.push_back({series.switch_id, m.n, series.phase, "bhca", m.bhca, bhca_limit});
    if (cap.ss7_max > 0.0 && m.ss7_util > ss7_limit)
      out.push_back({series.switch_id, m.n, series.phase, "ss7", m.ss7_util, ss7_limit});
  }
}

}  // namespace

CostReport compare_futures(const UtilizationSeries& without, const UtilizationSeries& with,
                           const SwitchCapacity& cap, const Prices& prices,
                           const CostingOptions& options) {
  const bool same_months =
      without.months.size() == with.months.size() &&
      std::equal(without.months.begin(), without.months.end(), with.months.begin(),
                 [](const MonthUtilization& a, const MonthUtilization& b) { return a.n == b.n; });
  if (!same_months)
    throw PlannerError(ErrorCode::InvalidComparison, "series cover different months");
  if (without.switch_id != with.switch_id)
    throw PlannerError(ErrorCode::InvalidComparison, "series belong to different switches");

  CostReport report;
  report.trunk_unit_price = prices.trunk_unit_price;
  report.switch_unit_price = prices.switch_unit_price;
  if (auto plan = first_expansion(without, cap, options)) {
    report.cost_without_rehoming = expansion_cost(*plan, prices);
    report.expansions_without.push_back(std::move(*plan));
  }
  if (auto plan = first_expansion(with, cap, options)) {
    report.cost_with_rehoming = expansion_cost(*plan, prices);
    report.expansions_with.push_back(std::move(*plan));
  }
  report.savings = report.cost_without_rehoming - report.cost_with_rehoming;
  collect_breaches(without, cap, report.breaches);
  collect_breaches(with, cap, report.breaches);
  return report;
}

CostReport combine_reports(const std::vector<CostReport>& reports, const Prices& prices) {
  CostReport total;
  total.trunk_unit_price = prices.trunk_unit_price;
  total.switch_unit_price = prices.switch_unit_price;
  for (const auto& r : reports) {
    total.cost_without_rehoming += r.cost_without_rehoming;
    total.cost_with_rehoming += r.cost_with_rehoming;
    total.expansions_without.insert(total.expansions_without.end(), r.expansions_without.begin(),
                                    r.expansions_without.end());
    total.expansions_with.insert(total.expansions_with.end(), r.expansions_with.begin(),
                                 r.expansions_with.end());
    total.breaches.insert(total.breaches.end(), r.breaches.begin(), r.breaches.end());
  }
  total.savings = total.cost_without_rehoming - total.cost_with_rehoming;
  return total;
}

}  // namespace rehome
