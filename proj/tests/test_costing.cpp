#include <doctest.h>

#include <random>

#include "rehome/costing.hpp"

using namespace rehome;

namespace {

SwitchCapacity cap(std::int64_t installed, std::int64_t max, double redundancy, std::int64_t per_card) {
  SwitchCapacity c;
  c.bhca_installed = 1e6;
  c.bhca_max = 2e6;
  c.trunks_installed = installed;
  c.trunks_max = max;
  c.ss7_installed = 1;
  c.ss7_max = 1;
  c.trunks_per_card = per_card;
  c.redundancy_factor = redundancy;
  return c;
}

UtilizationSeries trunk_series(const std::vector<double>& trunks, double bhca = 1000) {
  UtilizationSeries s{"SW", Phase::BeforeRehoming, {}};
  int n = 1;
  for (double t : trunks) s.months.push_back({n++, t * 16.8, bhca, t, 0.1, std::nullopt});
  return s;
}

Prices prices() { return {Money::from_decimal(1000), Money::from_decimal(1000000)}; }

}  // namespace

TEST_CASE("money keeps whole cents") {
  CHECK(Money::from_decimal(1000).cents == 100000);
  CHECK(Money::from_decimal(0.1).cents + Money::from_decimal(0.2).cents == 30);
  CHECK((Money::from_decimal(12.34) * 3).to_decimal() == doctest::Approx(37.02));
  CHECK(Money{5} < Money{7});
}

TEST_CASE("roundup absorbs floating noise only") {
  CHECK(roundup(190.0) == 190);
  CHECK(roundup(190.0000000001) == 190);
  CHECK(roundup(190.001) == 191);
  CHECK(roundup(11.875) == 12);
  CHECK(roundup(-3.5) == -3);
  CHECK(roundup(0.0) == 0);
}

TEST_CASE("trunks needed") {
  CHECK(trunks_needed(1470, cap(1280, 2000, 1.0, 1)) == 190);
  CHECK(trunks_needed(1470, cap(1280, 2000, 1.0, 16)) == 192);
  CHECK(trunks_needed(1088, cap(1280, 2000, 0.85, 1)) == 0);
  CHECK(trunks_needed(1200, cap(1280, 2000, 1.0, 1)) == 0);
  // Division by the redundancy factor unless the forecast already carries it.
  CHECK(trunks_needed(1470, cap(1280, 2000, 0.85, 1)) == 450);
  CHECK(trunks_needed(1470, cap(1280, 2000, 0.85, 1), true) == 190);
}

TEST_CASE("trunks needed is a monotone multiple of the card size") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> fc(0, 5000);
  std::uniform_int_distribution<int> card(1, 32);
  for (int i = 0; i < 500; ++i) {
    const auto c = cap(1280, 4000, 0.85, card(rng));
    const double a = fc(rng), b = a + fc(rng) / 10;
    const auto ta = trunks_needed(a, c), tb = trunks_needed(b, c);
    CHECK(ta >= 0);
    CHECK(ta % c.trunks_per_card == 0);
    CHECK(tb >= ta);
  }
}

TEST_CASE("new switches needed") {
  CHECK(new_switches_needed(192, cap(1280, 2000, 0.85, 1), 1) == 0);
  CHECK(new_switches_needed(4500 - 1280, cap(1280, 2000, 0.85, 1), 1) == 2);
  CHECK(new_switches_needed(0, cap(1280, 2000, 0.85, 1), 1) == 0);
  // Trigger at exactly B_Max x F.
  CHECK(new_switches_needed(1700 - 1280, cap(1280, 2000, 0.85, 1), 1) == 0);
  CHECK(new_switches_needed(1700 - 1280 - 1, cap(1280, 2000, 0.85, 1), 1) == 0);
  CHECK(new_switches_needed(3000, cap(1280, 2000, 0.85, 1), 5) == 0);
  // Larger maximum never needs more switches.
  for (std::int64_t add = 0; add < 6000; add += 37) {
    CHECK(new_switches_needed(add, cap(1280, 3000, 0.85, 1), 1) <=
          new_switches_needed(add, cap(1280, 2000, 0.85, 1), 1));
  }
}

TEST_CASE("trunks per new switch") {
  const auto c = cap(1280, 2000, 0.85, 1);
  auto spread = trunks_per_new_switch(4500 - 1280, c, 1, 2);
  CHECK(spread.trunks_per_switch == 1500.0);
  CHECK(spread.feasible);

  spread = trunks_per_new_switch(192, c, 1, 0);
  CHECK(spread.trunks_per_switch == 1472.0);
  CHECK(spread.feasible);

  // 3 x 2000 x 0.85 = 5100; one trunk above the limit.
  spread = trunks_per_new_switch(5101 - 1280, c, 1, 2);
  CHECK(spread.trunks_per_switch == doctest::Approx(5101.0 / 3));
  CHECK_FALSE(spread.feasible);
  CHECK(trunks_per_new_switch(5100 - 1280, c, 1, 2).feasible);

  CHECK_THROWS_AS(trunks_per_new_switch(10, c, 0, 0), PlannerError);
}

TEST_CASE("expansion plan and cost") {
  const auto c = cap(1280, 2000, 0.85, 1);
  const MonthUtilization m{6, 0, 0, 1470, 0, std::nullopt};
  const auto p = plan_expansion("SW", m, c, {true});
  CHECK(p.trunks_to_add == 190);
  CHECK(p.new_switch_count == 0);
  CHECK(p.feasible);
  CHECK(expansion_cost(p, prices()) == Money::from_decimal(190000));

  const MonthUtilization big{6, 0, 0, 4500, 0, std::nullopt};
  const auto q = plan_expansion("SW", big, c, {true});
  CHECK(q.trunks_to_add == 3220);
  CHECK(q.new_switch_count == 2);
  CHECK(q.trunks_per_new_switch == 1500.0);
  CHECK(expansion_cost(q, prices()) == Money::from_decimal(3220 * 1000.0 + 2 * 1000000.0));
}

TEST_CASE("first expansion and headroom month") {
  const auto c = cap(1280, 2000, 0.85, 1);
  const auto s = trunk_series({900, 950, 1000, 1050, 1090, 1470});
  const auto e = first_expansion(s, c, {true});
  REQUIRE(e.has_value());
  CHECK(e->month == 6);
  CHECK(e->trunks_to_add == 190);
  CHECK(headroom_breach_month(s, c) == 5);
  CHECK_FALSE(first_expansion(trunk_series({100, 200}), c, {true}).has_value());
  CHECK_FALSE(headroom_breach_month(trunk_series({100, 200}), c).has_value());
}

TEST_CASE("compare futures") {
  const auto c = cap(1280, 2000, 0.85, 1);
  const auto without = trunk_series({900, 950, 1000, 1050, 1090, 1470});
  auto with = trunk_series({900, 950, 1000, 1050, 1090, 1270});
  with.phase = Phase::AfterRehoming;

  const auto r = compare_futures(without, with, c, prices(), {true});
  CHECK(r.cost_without_rehoming == Money::from_decimal(190000));
  CHECK(r.cost_with_rehoming == Money{0});
  CHECK(r.savings == Money::from_decimal(190000));

  const auto same = compare_futures(without, without, c, prices(), {true});
  CHECK(same.savings == Money{0});

  const auto inverted = compare_futures(with, without, c, prices(), {true});
  CHECK(inverted.savings == Money::from_decimal(-190000));

  CHECK_THROWS_AS(compare_futures(without, trunk_series({1, 2}), c, prices(), {true}), PlannerError);

  const auto hot = trunk_series({900, 950}, 1.9e6);
  const auto flagged = compare_futures(hot, hot, c, prices(), {true});
  CHECK_FALSE(flagged.breaches.empty());
  CHECK(flagged.breaches.front().criterion == "bhca");
}

TEST_CASE("combined reports add up") {
  const auto c = cap(1280, 2000, 0.85, 1);
  const auto a = compare_futures(trunk_series({1470}), trunk_series({1270}), c, prices(), {true});
  const auto b = compare_futures(trunk_series({800}), trunk_series({1500}), c, prices(), {true});
  const auto sum = combine_reports({a, b}, prices());
  CHECK(sum.cost_without_rehoming == a.cost_without_rehoming + b.cost_without_rehoming);
  CHECK(sum.cost_with_rehoming == a.cost_with_rehoming + b.cost_with_rehoming);
  CHECK(sum.savings == sum.cost_without_rehoming - sum.cost_with_rehoming);
}
