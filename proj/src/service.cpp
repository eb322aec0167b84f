#include "rehome/service.hpp"

#include <httplib.h>

#include <sstream>
#include <vector>

namespace rehome {

namespace {

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= path.size()) {
    auto end = path.find('/', start);
    if (end == std::string_view::npos) end = path.size();
    if (end > start) parts.emplace_back(path.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

std::map<std::string, std::string> parse_query(std::string_view query) {
  std::map<std::string, std::string> out;
  std::size_t start = 0;
  while (start < query.size()) {
    auto end = query.find('&', start);
    if (end == std::string_view::npos) end = query.size();
    const auto item = query.substr(start, end - start);
    const auto eq = item.find('=');
    if (!item.empty()) {
      if (eq == std::string_view::npos) out[std::string(item)] = "";
      else out[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
    }
    start = end + 1;
  }
  return out;
}

HttpResponse json_response(int status, const json& body) {
  return {status, body.dump(2) + "\n", "application/json"};
}

HttpResponse error_response(const PlannerError& e) {
  return json_response(http_status(e.code()), error_document(e));
}

HttpResponse simple_error(int status, const std::string& code, const std::string& message) {
  return json_response(status, {{"code", code}, {"message", message}});
}

json parse_body(const std::string& body) {
  try {
    return json::parse(body.empty() ? std::string("{}") : body);
  } catch (const json::parse_error& e) {
    throw PlannerError(ErrorCode::Parse, std::string("request body is not JSON: ") + e.what());
  }
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& what) {
  if (!j.is_object()) throw PlannerError(ErrorCode::Parse, what + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw PlannerError(ErrorCode::Parse, what + ": unknown field '" + key + "'");
  }
}

}  // namespace

Objective parse_objective(const std::string& s) {
  if (s == "min-cost") return Objective::MinCost;
  if (s == "min-peak-utilization") return Objective::MinPeakUtilization;
  throw PlannerError(ErrorCode::Parse, "unknown objective '" + s +
                                           "' (expected min-cost or min-peak-utilization)");
}

Backend parse_backend(const std::string& s) {
  if (s == "auto") return Backend::Auto;
  if (s == "greedy") return Backend::Greedy;
  if (s == "exhaustive") return Backend::Exhaustive;
  throw PlannerError(ErrorCode::Parse, "unknown backend '" + s + "'");
}

PlanOptions parse_plan_options(const json& j) {
  reject_unknown_keys(j, {"objective", "max_moves", "threshold", "horizon", "backend", "rehoming_month"},
                      "plan request");
  PlanOptions o;
  try {
    if (j.contains("objective")) o.objective = parse_objective(j.at("objective").get<std::string>());
    if (j.contains("backend")) o.backend = parse_backend(j.at("backend").get<std::string>());
    if (j.contains("max_moves")) o.max_moves = j.at("max_moves").get<int>();
    if (j.contains("threshold")) o.threshold = j.at("threshold").get<double>();
    if (j.contains("horizon") && !j.at("horizon").is_null()) o.horizon = j.at("horizon").get<int>();
    if (j.contains("rehoming_month") && !j.at("rehoming_month").is_null())
      o.rehoming_month = j.at("rehoming_month").get<int>();
  } catch (const json::exception& e) {
    throw PlannerError(ErrorCode::Parse, std::string("plan request: ") + e.what());
  }
  return o;
}

OptimizationRequest make_request(const NetworkTopology& topology,
                                 const std::vector<SubscriberForecast>& forecasts,
                                 const PlannerConfig& config, const PlanOptions& options) {
  OptimizationRequest r;
  r.topology = topology;
  r.forecasts = forecasts;
  r.config = config;
  r.objective = options.objective;
  r.max_moves = options.max_moves;
  r.load_threshold = options.threshold.value_or(config.load_threshold);
  r.horizon = options.horizon;
  r.backend = options.backend;
  r.rehoming_month = options.rehoming_month;
  return r;
}

json evaluation_document(const NetworkTopology& topology,
                         const std::vector<SubscriberForecast>& forecasts,
                         const PlannerConfig& config, const RehomingScenario& scenario) {
  return to_json(evaluate_scenario(topology, index_forecasts(forecasts), config, scenario));
}

json runbook_document(const std::vector<RehomingScenario>& scenarios,
                      const NetworkTopology& topology) {
  json runbooks = json::array();
  for (const auto& s : scenarios) runbooks.push_back(to_json(generate_runbook(s, topology)));
  return {{"runbooks", runbooks}};
}

std::string runbook_text(const std::vector<RehomingScenario>& scenarios,
                         const NetworkTopology& topology) {
  if (scenarios.empty()) return render_runbook_text(Runbook{});
  std::string out;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    if (i > 0) out += "\n";
    out += render_runbook_text(generate_runbook(scenarios[i], topology));
  }
  return out;
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound: return 404;
    case ErrorCode::Parse: return 400;
    case ErrorCode::Storage: return 500;
    default: return 422;
  }
}

json error_document(const PlannerError& e) {
  json out = {{"code", to_string(e.code())}, {"message", e.what()}};
  if (!e.violations().empty()) out["violations"] = to_json(e.violations());
  return out;
}

HttpResponse PlannerService::handle(std::string_view method, std::string_view target,
                                    const std::string& body) const {
  const auto qpos = target.find('?');
  const auto path = target.substr(0, qpos);
  const auto query =
      qpos == std::string_view::npos ? std::map<std::string, std::string>{} : parse_query(target.substr(qpos + 1));
  const auto parts = split_path(path);

  try {
    if (parts.empty() || parts[0] != "workspaces")
      return simple_error(404, "not-found", "no route for " + std::string(path));
    const bool get = method == "GET";
    const bool post = method == "POST";

    if (parts.size() == 1) {
      if (post) return create_workspace(body);
      if (get) return json_response(200, {{"workspaces", store_.list()}});
    } else if (parts.size() == 2) {
      if (get) return get_workspace(parts[1]);
    } else if (parts.size() == 3 && parts[2] == "evaluate") {
      if (post) return evaluate(parts[1], body);
    } else if (parts.size() == 3 && parts[2] == "plan") {
      if (post) return plan(parts[1], body);
    } else if (parts.size() == 4 && parts[2] == "runbooks") {
      if (get) return runbook(parts[1], parts[3], query);
    } else {
      return simple_error(404, "not-found", "no route for " + std::string(path));
    }
    return simple_error(405, "method-not-allowed",
                        std::string(method) + " is not supported on " + std::string(path));
  } catch (const PlannerError& e) {
    return error_response(e);
  } catch (const std::exception& e) {
    return simple_error(500, "internal-error", e.what());
  }
}

HttpResponse PlannerService::create_workspace(const std::string& body) const {
  const auto j = parse_body(body);
  reject_unknown_keys(j, {"topology", "forecast", "config"}, "workspace request");
  if (!j.contains("topology") || !j.contains("forecast"))
    throw PlannerError(ErrorCode::Parse, "workspace request needs topology and forecast");
  auto topology = parse_topology(j.at("topology"));
  auto forecasts = parse_forecasts(j.at("forecast"));
  auto config = j.contains("config") ? parse_config(j.at("config")) : PlannerConfig{};
  const auto w = store_.create(std::move(topology), std::move(forecasts), std::move(config));
  return json_response(201, to_json(w));
}

HttpResponse PlannerService::get_workspace(const std::string& id) const {
  return json_response(200, to_json(store_.load(id)));
}

HttpResponse PlannerService::evaluate(const std::string& id, const std::string& body) const {
  const auto w = store_.load(id);
  const auto scenario = parse_scenario(parse_body(body));
  return json_response(200, evaluation_document(w.topology, w.forecasts, w.config, scenario));
}

HttpResponse PlannerService::plan(const std::string& id, const std::string& body) const {
  const auto w = store_.load(id);
  const auto options = parse_plan_options(parse_body(body));
  const auto result = optimize(make_request(w.topology, w.forecasts, w.config, options));
  auto doc = to_json(result);
  const auto plan_id = store_.add_plan(id, result.scenarios, doc);
  doc["plan_id"] = plan_id;
  doc["workspace_id"] = id;
  return json_response(200, doc);
}

HttpResponse PlannerService::runbook(const std::string& id, const std::string& plan_id,
                                     const std::map<std::string, std::string>& query) const {
  const auto w = store_.load(id);
  const auto it = w.plans.find(plan_id);
  if (it == w.plans.end())
    throw PlannerError(ErrorCode::NotFound, "no plan '" + plan_id + "' in workspace '" + id + "'");
  const auto format = query.contains("format") ? query.at("format") : std::string("json");
  if (format == "text") return {200, runbook_text(it->second.scenarios, w.topology), "text/plain"};
  if (format != "json")
    throw PlannerError(ErrorCode::Parse, "format must be json or text");
  auto doc = runbook_document(it->second.scenarios, w.topology);
  doc["plan_id"] = plan_id;
  return json_response(200, doc);
}

struct HttpServer::Impl {
  explicit Impl(const PlannerService& s) : service(s) {}
  const PlannerService& service;
  httplib::Server server;
};

HttpServer::HttpServer(const PlannerService& service) : impl_(std::make_unique<Impl>(service)) {
  auto& srv = impl_->server;
  srv.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                           {"Access-Control-Allow-Headers", "Content-Type"}});
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    const auto r = impl_->service.handle(req.method, req.target, req.body);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  srv.Get(".*", forward);
  srv.Post(".*", forward);
  srv.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace rehome
