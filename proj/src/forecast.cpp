#include "rehome/forecast.hpp"

#include <cmath>

namespace rehome {

std::string_view to_string(Phase phase) {
  return phase == Phase::BeforeRehoming ? "BeforeRehoming" : "AfterRehoming";
}

std::string_view to_string(TrunkStandard s) { return s == TrunkStandard::T1 ? "T1" : "E1"; }

std::string_view to_string(TrunkMethod m) {
  return m == TrunkMethod::Linear ? "linear" : "erlang_b";
}

void validate_traffic_model(const TrafficModel& model) {
  if (!(model.erlang_per_subscriber > 0.0))
    throw PlannerError(ErrorCode::InvalidModel, "erlang_per_subscriber must be positive");
  if (!(model.mean_call_seconds > 0.0))
    throw PlannerError(ErrorCode::InvalidModel, "mean_call_seconds must be positive");
  if (!(model.channel_loading > 0.0 && model.channel_loading <= 1.0))
    throw PlannerError(ErrorCode::InvalidModel, "channel_loading must lie in (0, 1]");
  if (!(model.target_blocking > 0.0 && model.target_blocking < 1.0))
    throw PlannerError(ErrorCode::InvalidModel, "target_blocking must lie in (0, 1)");
}

void validate_ss7_model(const Ss7Model& ss7) {
  if (!(ss7.msu_per_call > 0.0 && ss7.bits_per_msu > 0.0 && ss7.link_count > 0.0 &&
        ss7.link_bps > 0.0))
    throw PlannerError(ErrorCode::InvalidModel, "SS7 model fields must all be positive");
}

void validate_subscriber_forecast(const SubscriberForecast& forecast) {
  int previous = 0;
  for (const auto& m : forecast.months) {
    if (previous == 0 && m.n != 1)
      throw PlannerError(ErrorCode::InvalidInput,
                         "forecast for '" + forecast.switch_id + "' must start at month 1");
    if (m.n <= previous)
      throw PlannerError(ErrorCode::InvalidInput,
                         "month indices for '" + forecast.switch_id + "' must strictly increase");
    if (!(m.subscribers >= 0.0))
      throw PlannerError(ErrorCode::InvalidInput,
                         "subscriber count for '" + forecast.switch_id + "' must be non-negative");
    previous = m.n;
  }
}

double forecast_traffic(double subscribers, const TrafficModel& model) {
  return subscribers * model.erlang_per_subscriber;
}

double forecast_bhca(double traffic_erlang, const TrafficModel& model) {
  if (!(model.mean_call_seconds > 0.0))
    throw PlannerError(ErrorCode::InvalidModel, "mean_call_seconds must be positive");
  return traffic_erlang * 3600.0 / model.mean_call_seconds;
}

double forecast_trunks(double traffic_erlang, const TrafficModel& model) {
  return traffic_erlang / (model.channel_loading * channels_per_trunk(model.trunk_standard));
}

double forecast_ss7(double bhca, const Ss7Model& ss7) {
  const double bits_per_second = bhca / 3600.0 * ss7.msu_per_call * ss7.bits_per_msu;
  return bits_per_second / (ss7.link_count * ss7.link_bps);
}

double forecast_trunks_for(double traffic_erlang, const TrafficModel& model) {
  if (model.trunk_method == TrunkMethod::Linear) return forecast_trunks(traffic_erlang, model);
  const auto lines = erlang_b_required_lines(traffic_erlang, model.target_blocking);
  return static_cast<double>(lines) / channels_per_trunk(model.trunk_standard);
}

double erlang_b_blocking(double offered_erlang, std::int64_t lines) {
  if (offered_erlang < 0.0 || lines < 0)
    throw PlannerError(ErrorCode::InvalidInput, "Erlang B needs non-negative traffic and lines");
  double b = 1.0;
  for (std::int64_t m = 1; m <= lines; ++m) {
    const double eb = offered_erlang * b;
    b = eb / (static_cast<double>(m) + eb);
  }
  return b;
}

std::int64_t erlang_b_required_lines(double offered_erlang, double target_blocking) {
  if (!(target_blocking > 0.0 && target_blocking < 1.0))
    throw PlannerError(ErrorCode::InvalidInput, "target blocking must lie in (0, 1)");
  if (!(offered_erlang >= 0.0))
    throw PlannerError(ErrorCode::InvalidInput, "offered traffic must be non-negative");
  if (offered_erlang == 0.0) return 0;
  double b = 1.0;
  std::int64_t m = 0;
  while (b > target_blocking) {
    ++m;
    const double eb = offered_erlang * b;
    b = eb / (static_cast<double>(m) + eb);
  }
  return m;
}

UtilizationSeries build_utilization_series(const SubscriberForecast& forecast,
                                           const TrafficModel& model, const Ss7Model& ss7) {
  validate_traffic_model(model);
  validate_ss7_model(ss7);
  validate_subscriber_forecast(forecast);

  UtilizationSeries series;
  series.switch_id = forecast.switch_id;
  series.phase = Phase::BeforeRehoming;
  series.months.reserve(forecast.months.size());
  for (const auto& m : forecast.months) {
    MonthUtilization u;
    u.n = m.n;
    u.label = m.label;
    u.traffic_erlang = forecast_traffic(m.subscribers, model);
    u.bhca = forecast_bhca(u.traffic_erlang, model);
    u.trunks = forecast_trunks_for(u.traffic_erlang, model);
    u.ss7_util = forecast_ss7(u.bhca, ss7);
    series.months.push_back(std::move(u));
  }
  return series;
}

}  // namespace rehome
