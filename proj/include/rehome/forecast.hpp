#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rehome/topology.hpp"

namespace rehome {

enum class TrunkStandard { T1, E1 };

constexpr int channels_per_trunk(TrunkStandard s) { return s == TrunkStandard::T1 ? 24 : 30; }

/// How trunk counts are derived from switch traffic.
enum class TrunkMethod {
  Linear,   // Erlang / (channel loading x channels per trunk)
  ErlangB,  // required lines at a target blocking, divided by channels per trunk
};

struct TrafficModel {
  double erlang_per_subscriber = 0.02;
  double mean_call_seconds = 90.0;
  double channel_loading = 0.7;
  TrunkStandard trunk_standard = TrunkStandard::T1;
  TrunkMethod trunk_method = TrunkMethod::Linear;
  double target_blocking = 0.01;

  bool operator==(const TrafficModel&) const = default;
};

/// Linear SS7 signalling load model. The defaults are engine-defined.
struct Ss7Model {
  double msu_per_call = 10.0;
  double bits_per_msu = 800.0;
  double link_count = 1.0;
  double link_bps = 64000.0;

  bool operator==(const Ss7Model&) const = default;
};

struct MonthSubscribers {
  int n = 1;
  double subscribers = 0.0;
  std::optional<std::string> label;  // display only, e.g. "2008-06"

  bool operator==(const MonthSubscribers&) const = default;
};

struct SubscriberForecast {
  Id switch_id;
  std::vector<MonthSubscribers> months;

  bool operator==(const SubscriberForecast&) const = default;
};

enum class Phase { BeforeRehoming, AfterRehoming };

struct MonthUtilization {
  int n = 1;
  double traffic_erlang = 0.0;
  double bhca = 0.0;
  double trunks = 0.0;
  double ss7_util = 0.0;
  std::optional<std::string> label;

  bool operator==(const MonthUtilization&) const = default;
};

struct UtilizationSeries {
  Id switch_id;
  Phase phase = Phase::BeforeRehoming;
  std::vector<MonthUtilization> months;

  bool operator==(const UtilizationSeries&) const = default;
};

std::string_view to_string(Phase phase);
std::string_view to_string(TrunkStandard s);
std::string_view to_string(TrunkMethod m);

/// Throws PlannerError(InvalidModel) unless every field is usable.
void validate_traffic_model(const TrafficModel& model);
void validate_ss7_model(const Ss7Model& ss7);
/// Throws PlannerError(InvalidInput): months must start at 1 and strictly increase.
void validate_subscriber_forecast(const SubscriberForecast& forecast);

double forecast_traffic(double subscribers, const TrafficModel& model);
double forecast_bhca(double traffic_erlang, const TrafficModel& model);
double forecast_trunks(double traffic_erlang, const TrafficModel& model);
double forecast_ss7(double bhca, const Ss7Model& ss7);

/// Trunks through whichever method the model selects. The Erlang B path
/// sizes lines at `target_blocking` and converts them to fractional trunks.
double forecast_trunks_for(double traffic_erlang, const TrafficModel& model);

/// Blocking probability B(E, m) by the stable recurrence.
double erlang_b_blocking(double offered_erlang, std::int64_t lines);

/// Smallest m with B(offered, m) <= target_blocking. Zero traffic needs zero lines.
std::int64_t erlang_b_required_lines(double offered_erlang, double target_blocking);

UtilizationSeries build_utilization_series(const SubscriberForecast& forecast,
                                           const TrafficModel& model, const Ss7Model& ss7);

}  // namespace rehome
