#include "rehome/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace rehome {

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
  throw PlannerError(ErrorCode::Parse, path + ": " + what);
}

/// Field access over one JSON object that remembers which keys were read,
/// so leftovers can be rejected.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) parse_fail(path_, "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  const json& raw(const std::string& key) {
    used_.insert(key);
    if (!j_.contains(key)) parse_fail(path_, "missing field '" + key + "'");
    return j_.at(key);
  }

  std::string text(const std::string& key) {
    const auto& v = raw(key);
    if (!v.is_string()) parse_fail(at(key), "expected a string");
    return v.get<std::string>();
  }

  double number(const std::string& key) {
    const auto& v = raw(key);
    if (!v.is_number()) parse_fail(at(key), "expected a number");
    return v.get<double>();
  }

  std::int64_t integer(const std::string& key) {
    const auto& v = raw(key);
    if (!v.is_number_integer()) parse_fail(at(key), "expected an integer");
    return v.get<std::int64_t>();
  }

  bool boolean(const std::string& key) {
    const auto& v = raw(key);
    if (!v.is_boolean()) parse_fail(at(key), "expected true or false");
    return v.get<bool>();
  }

  std::vector<std::string> texts(const std::string& key) {
    const auto& v = raw(key);
    if (!v.is_array()) parse_fail(at(key), "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& e : v) {
      if (!e.is_string()) parse_fail(at(key), "expected an array of strings");
      out.push_back(e.get<std::string>());
    }
    return out;
  }

  /// Accepts a missing or null field.
  void optional_field(const std::string& key) { used_.insert(key); }

  double number_or(const std::string& key, double fallback) {
    used_.insert(key);
    return has(key) ? number(key) : fallback;
  }

  std::string at(const std::string& key) const { return path_ + "." + key; }

  void done() const {
    for (const auto& [key, _] : j_.items()) {
      if (!used_.contains(key)) parse_fail(path_, "unknown field '" + key + "'");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

const json& array_at(Reader& r, const std::string& key) {
  const auto& v = r.raw(key);
  if (!v.is_array()) parse_fail(r.at(key), "expected an array");
  return v;
}

IdSet id_set(Reader& r, const std::string& key) {
  auto items = r.texts(key);
  IdSet out(items.begin(), items.end());
  if (out.size() != items.size()) parse_fail(r.at(key), "duplicate identifiers");
  return out;
}

SwitchCapacity parse_capacity(const json& j, const std::string& path) {
  Reader r(j, path);
  SwitchCapacity c;
  c.bhca_installed = r.number("bhca_installed");
  c.bhca_max = r.number("bhca_max");
  c.trunks_installed = r.integer("trunks_installed");
  c.trunks_max = r.integer("trunks_max");
  c.ss7_installed = r.number("ss7_installed");
  c.ss7_max = r.number("ss7_max");
  c.trunks_per_card = r.integer("trunks_per_card");
  c.redundancy_factor = r.number("redundancy_factor");
  r.done();
  return c;
}

SwitchKind parse_switch_kind(const std::string& s, const std::string& path) {
  if (s == "Mgw3G") return SwitchKind::Mgw3G;
  if (s == "Msc2G") return SwitchKind::Msc2G;
  parse_fail(path, "unknown switch kind '" + s + "'");
}

ControllerKind parse_controller_kind(const std::string& s, const std::string& path) {
  if (s == "Rnc") return ControllerKind::Rnc;
  if (s == "Bsc") return ControllerKind::Bsc;
  parse_fail(path, "unknown controller kind '" + s + "'");
}

std::string indexed(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

json id_array(const IdSet& ids) { return json(std::vector<std::string>(ids.begin(), ids.end())); }

json series_months(const UtilizationSeries& s) {
  json months = json::array();
  for (const auto& m : s.months) {
    json jm = {{"n", m.n},
               {"traffic_erlang", m.traffic_erlang},
               {"bhca", m.bhca},
               {"trunks", m.trunks},
               {"ss7_util", m.ss7_util}};
    if (m.label) jm["label"] = *m.label;
    months.push_back(std::move(jm));
  }
  return months;
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

NetworkTopology parse_topology(const json& j) {
  Reader root(j, "topology");
  std::vector<Market> markets;
  std::vector<Mss> mss;
  std::vector<SwitchNode> switches;
  std::vector<ControllerNode> controllers;

  const auto& jm = array_at(root, "markets");
  for (std::size_t i = 0; i < jm.size(); ++i) {
    Reader r(jm[i], indexed("markets", i));
    markets.push_back({r.text("id"), r.text("name")});
    r.done();
  }
  const auto& jss = array_at(root, "mss");
  for (std::size_t i = 0; i < jss.size(); ++i) {
    Reader r(jss[i], indexed("mss", i));
    Mss m;
    m.id = r.text("id");
    m.controlled_mgw_ids = id_set(r, "controlled_mgw_ids");
    r.done();
    mss.push_back(std::move(m));
  }
  const auto& jsw = array_at(root, "switches");
  for (std::size_t i = 0; i < jsw.size(); ++i) {
    const auto path = indexed("switches", i);
    Reader r(jsw[i], path);
    SwitchNode s;
    s.id = r.text("id");
    s.kind = parse_switch_kind(r.text("kind"), r.at("kind"));
    s.market_id = r.text("market_id");
    r.optional_field("mss_id");
    if (r.has("mss_id")) s.mss_id = r.text("mss_id");
    s.capacity = parse_capacity(r.raw("capacity"), r.at("capacity"));
    r.done();
    switches.push_back(std::move(s));
  }
  const auto& jc = array_at(root, "controllers");
  for (std::size_t i = 0; i < jc.size(); ++i) {
    Reader r(jc[i], indexed("controllers", i));
    ControllerNode c;
    c.id = r.text("id");
    c.kind = parse_controller_kind(r.text("kind"), r.at("kind"));
    c.homed_to = id_set(r, "homed_to");
    c.trunks = r.integer("trunks");
    c.traffic_erlang = r.number("traffic_erlang");
    r.done();
    controllers.push_back(std::move(c));
  }
  root.done();
  return NetworkTopology(std::move(markets), std::move(mss), std::move(switches),
                         std::move(controllers));
}

std::vector<SubscriberForecast> parse_forecasts(const json& j) {
  if (!j.is_array()) parse_fail("forecast", "expected an array");
  std::vector<SubscriberForecast> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto path = indexed("forecast", i);
    Reader r(j[i], path);
    SubscriberForecast f;
    f.switch_id = r.text("switch_id");
    const auto& months = array_at(r, "months");
    for (std::size_t k = 0; k < months.size(); ++k) {
      Reader rm(months[k], path + "." + indexed("months", k));
      MonthSubscribers m;
      const auto n = rm.integer("n");
      if (n < 1 || n > 100000) parse_fail(rm.at("n"), "month index out of range");
      m.n = static_cast<int>(n);
      m.subscribers = rm.number("subscribers");
      rm.optional_field("label");
      if (rm.has("label")) m.label = rm.text("label");
      rm.done();
      f.months.push_back(std::move(m));
    }
    r.done();
    out.push_back(std::move(f));
  }
  return out;
}

PlannerConfig parse_config(const json& j) {
  Reader root(j, "config");
  PlannerConfig c;
  if (root.has("traffic_model")) {
    Reader r(root.raw("traffic_model"), "config.traffic_model");
    auto& t = c.traffic;
    t.erlang_per_subscriber = r.number_or("erlang_per_subscriber", t.erlang_per_subscriber);
    t.mean_call_seconds = r.number_or("mean_call_seconds", t.mean_call_seconds);
    t.channel_loading = r.number_or("channel_loading", t.channel_loading);
    t.target_blocking = r.number_or("target_blocking", t.target_blocking);
    if (r.has("trunk_standard")) {
      const auto s = r.text("trunk_standard");
      if (s == "T1") t.trunk_standard = TrunkStandard::T1;
      else if (s == "E1") t.trunk_standard = TrunkStandard::E1;
      else parse_fail(r.at("trunk_standard"), "expected T1 or E1");
    }
    if (r.has("trunk_method")) {
      const auto s = r.text("trunk_method");
      if (s == "linear") t.trunk_method = TrunkMethod::Linear;
      else if (s == "erlang_b") t.trunk_method = TrunkMethod::ErlangB;
      else parse_fail(r.at("trunk_method"), "expected linear or erlang_b");
    }
    r.done();
  }
  if (root.has("ss7_model")) {
    Reader r(root.raw("ss7_model"), "config.ss7_model");
    auto& s = c.ss7;
    s.msu_per_call = r.number_or("msu_per_call", s.msu_per_call);
    s.bits_per_msu = r.number_or("bits_per_msu", s.bits_per_msu);
    s.link_count = r.number_or("link_count", s.link_count);
    s.link_bps = r.number_or("link_bps", s.link_bps);
    r.done();
  }
  if (root.has("prices")) {
    Reader r(root.raw("prices"), "config.prices");
    c.prices.trunk_unit_price =
        Money::from_decimal(r.number_or("trunk_unit_price", c.prices.trunk_unit_price.to_decimal()));
    c.prices.switch_unit_price = Money::from_decimal(
        r.number_or("switch_unit_price", c.prices.switch_unit_price.to_decimal()));
    r.done();
  }
  c.load_threshold = root.number_or("load_threshold", c.load_threshold);
  if (root.has("redundancy_applied_in_forecast"))
    c.costing.redundancy_applied_in_forecast = root.boolean("redundancy_applied_in_forecast");
  root.done();

  validate_traffic_model(c.traffic);
  validate_ss7_model(c.ss7);
  if (!(c.load_threshold > 0.0 && c.load_threshold <= 1.0))
    parse_fail("config.load_threshold", "must lie in (0, 1]");
  return c;
}

RehomingScenario parse_scenario(const json& j) {
  Reader r(j, "scenario");
  RehomingScenario s;
  s.moved_controllers = r.texts("moved_controllers");
  s.target_switch_ids = id_set(r, "target_switch_ids");
  const auto month = r.integer("rehoming_month");
  if (month < -100000 || month > 100000) parse_fail(r.at("rehoming_month"), "out of range");
  s.rehoming_month = static_cast<int>(month);
  r.done();
  return s;
}

std::vector<RehomingScenario> parse_plan_scenarios(const json& j) {
  if (j.is_object() && j.contains("scenarios")) {
    const auto& arr = j.at("scenarios");
    if (!arr.is_array()) parse_fail("plan.scenarios", "expected an array");
    std::vector<RehomingScenario> out;
    for (const auto& s : arr) out.push_back(parse_scenario(s));
    return out;
  }
  return {parse_scenario(j)};
}

json to_json(const NetworkTopology& t) {
  json markets = json::array();
  for (const auto& m : t.markets()) markets.push_back({{"id", m.id}, {"name", m.name}});
  json mss = json::array();
  for (const auto& m : t.mss())
    mss.push_back({{"id", m.id}, {"controlled_mgw_ids", id_array(m.controlled_mgw_ids)}});
  json switches = json::array();
  for (const auto& s : t.switches()) {
    const auto& c = s.capacity;
    json js = {{"id", s.id},
               {"kind", to_string(s.kind)},
               {"market_id", s.market_id},
               {"capacity",
                {{"bhca_installed", c.bhca_installed},
                 {"bhca_max", c.bhca_max},
                 {"trunks_installed", c.trunks_installed},
                 {"trunks_max", c.trunks_max},
                 {"ss7_installed", c.ss7_installed},
                 {"ss7_max", c.ss7_max},
                 {"trunks_per_card", c.trunks_per_card},
                 {"redundancy_factor", c.redundancy_factor}}}};
    if (s.mss_id) js["mss_id"] = *s.mss_id;
    switches.push_back(std::move(js));
  }
  json controllers = json::array();
  for (const auto& c : t.controllers()) {
    controllers.push_back({{"id", c.id},
                           {"kind", to_string(c.kind)},
                           {"homed_to", id_array(c.homed_to)},
                           {"trunks", c.trunks},
                           {"traffic_erlang", c.traffic_erlang}});
  }
  return {{"markets", markets}, {"mss", mss}, {"switches", switches}, {"controllers", controllers}};
}

json to_json(const std::vector<SubscriberForecast>& forecasts) {
  json out = json::array();
  for (const auto& f : forecasts) {
    json months = json::array();
    for (const auto& m : f.months) {
      json jm = {{"n", m.n}, {"subscribers", m.subscribers}};
      if (m.label) jm["label"] = *m.label;
      months.push_back(std::move(jm));
    }
    out.push_back({{"switch_id", f.switch_id}, {"months", months}});
  }
  return out;
}

json to_json(const PlannerConfig& c) {
  return {{"traffic_model",
           {{"erlang_per_subscriber", c.traffic.erlang_per_subscriber},
            {"mean_call_seconds", c.traffic.mean_call_seconds},
            {"channel_loading", c.traffic.channel_loading},
            {"trunk_standard", to_string(c.traffic.trunk_standard)},
            {"trunk_method", to_string(c.traffic.trunk_method)},
            {"target_blocking", c.traffic.target_blocking}}},
          {"ss7_model",
           {{"msu_per_call", c.ss7.msu_per_call},
            {"bits_per_msu", c.ss7.bits_per_msu},
            {"link_count", c.ss7.link_count},
            {"link_bps", c.ss7.link_bps}}},
          {"prices",
           {{"trunk_unit_price", money_json(c.prices.trunk_unit_price)},
            {"switch_unit_price", money_json(c.prices.switch_unit_price)}}},
          {"load_threshold", c.load_threshold},
          {"redundancy_applied_in_forecast", c.costing.redundancy_applied_in_forecast}};
}

json to_json(const RehomingScenario& s) {
  return {{"moved_controllers", s.moved_controllers},
          {"target_switch_ids", id_array(s.target_switch_ids)},
          {"rehoming_month", s.rehoming_month}};
}

json to_json(const Violation& v) {
  return {{"node_id", v.node_id}, {"rule", v.rule}, {"message", v.message}};
}

json to_json(const std::vector<Violation>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

json to_json(const ModelClassification& c) {
  return {{"model", c.model_number},
          {"source_kind", to_string(c.source_kind)},
          {"target_kind", to_string(c.target_kind)}};
}

json to_json(const TrafficDelta& d) {
  return {{"switch_id", d.switch_id},
          {"erlang_delta", d.erlang_delta},
          {"trunk_delta", d.trunk_delta},
          {"sign", to_string(d.sign)}};
}

json to_json(const UtilizationSeries& s) {
  return {{"switch_id", s.switch_id}, {"phase", to_string(s.phase)}, {"months", series_months(s)}};
}

json to_json(const ExpansionPlan& p) {
  return {{"switch_id", p.switch_id},
          {"month", p.month},
          {"trunks_to_add", p.trunks_to_add},
          {"new_switch_count", p.new_switch_count},
          {"trunks_per_new_switch", p.trunks_per_new_switch},
          {"feasible", p.feasible}};
}

json money_json(Money m) { return m.to_decimal(); }

json to_json(const CostReport& r) {
  json without = json::array();
  for (const auto& p : r.expansions_without) without.push_back(to_json(p));
  json with = json::array();
  for (const auto& p : r.expansions_with) with.push_back(to_json(p));
  json breaches = json::array();
  for (const auto& b : r.breaches) {
    breaches.push_back({{"switch_id", b.switch_id},
                        {"month", b.month},
                        {"phase", to_string(b.phase)},
                        {"criterion", b.criterion},
                        {"value", b.value},
                        {"limit", b.limit}});
  }
  return {{"trunk_unit_price", money_json(r.trunk_unit_price)},
          {"switch_unit_price", money_json(r.switch_unit_price)},
          {"cost_without_rehoming", money_json(r.cost_without_rehoming)},
          {"cost_with_rehoming", money_json(r.cost_with_rehoming)},
          {"savings", money_json(r.savings)},
          {"expansions_without", without},
          {"expansions_with", with},
          {"breaches", breaches}};
}

json to_json(const Evaluation& e) {
  json out;
  out["scenario"] = to_json(e.scenario);
  out["effective_month"] = e.scenario.effective_month();
  out["source_switch_ids"] = id_array(e.source_switch_ids);
  out["n_source"] = e.source_switch_ids.size();
  out["n_target"] = e.scenario.target_switch_ids.size();
  out["classification"] = e.classification ? to_json(*e.classification) : json(nullptr);
  if (!e.classification_error.empty()) out["classification_error"] = e.classification_error;
  out["valid"] = e.valid();
  out["violations"] = to_json(e.violations);

  json deltas = json::array();
  for (const auto& d : e.deltas) deltas.push_back(to_json(d));
  out["deltas"] = deltas;

  json series = json::array();
  for (const auto& s : e.switches) {
    const bool source = e.source_switch_ids.contains(s.before.switch_id);
    series.push_back({{"switch_id", s.before.switch_id},
                      {"role", source ? "source" : "target"},
                      {"before", to_json(s.before)},
                      {"after", to_json(s.after)},
                      {"cost", to_json(s.cost)}});
  }
  out["series"] = series;
  out["rehoming_trigger_month"] = optional_json(e.trigger_month);
  out["cost"] = e.cost ? to_json(*e.cost) : json(nullptr);
  out["notes"] = {
      "SS7 utilization uses an engine-defined linear model (MSUs per call x bits per MSU over "
      "link capacity).",
      "Moved traffic is split evenly: 1/n_source per source switch and 1/n_target per target "
      "switch.",
      "BHCA after re-homing is rescaled from the first month of the loaded series."};
  return out;
}

json to_json(const OptimizationResult& r) {
  json scenarios = json::array();
  for (const auto& s : r.scenarios) scenarios.push_back(to_json(s));
  json peaks = json::array();
  for (const auto& p : r.score.peaks)
    peaks.push_back({{"switch_id", p.switch_id}, {"peak_utilization", p.peak_utilization}});
  return {{"objective", to_string(r.objective)},
          {"backend", to_string(r.backend_used)},
          {"rehoming_month", r.rehoming_month},
          {"feasible", r.feasible()},
          {"objective_value", r.score.objective_value},
          {"peak_utilization", r.score.peak_utilization},
          {"cost_with", money_json(r.score.cost_with)},
          {"savings", money_json(r.cost.savings)},
          {"scenarios", scenarios},
          {"peaks", peaks},
          {"cost", to_json(r.cost)},
          {"stats",
           {{"candidates", r.stats.candidates},
            {"plans_examined", r.stats.plans_examined},
            {"pruned", r.stats.pruned}}}};
}

json to_json(const Runbook& rb) {
  json steps = json::array();
  for (const auto& s : rb.steps) {
    steps.push_back({{"index", s.index},
                     {"phase", to_string(s.phase)},
                     {"description", s.description},
                     {"requires", s.requires_steps},
                     {"preconditions", s.preconditions},
                     {"effects", s.effects},
                     {"adapted", s.adapted}});
  }
  return {{"scenario", to_json(rb.scenario)}, {"adapted", rb.adapted}, {"steps", steps}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PlannerError(ErrorCode::NotFound, "cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw PlannerError(ErrorCode::Parse, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw PlannerError(ErrorCode::Storage, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw PlannerError(ErrorCode::Storage, "write failed for '" + path.string() + "'");
}

}  // namespace rehome
