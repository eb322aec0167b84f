#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "rehome/io.hpp"
#include "rehome/workspace.hpp"

namespace rehome {

/// Optimizer knobs shared by the CLI flags and the HTTP plan body.
struct PlanOptions {
  Objective objective = Objective::MinCost;
  int max_moves = 1;
  std::optional<double> threshold;  // falls back to config.load_threshold
  std::optional<int> horizon;
  Backend backend = Backend::Auto;
  std::optional<int> rehoming_month;
};

Objective parse_objective(const std::string& s);
Backend parse_backend(const std::string& s);
/// Reads {objective, max_moves, threshold, horizon, backend, rehoming_month};
/// every field is optional.
PlanOptions parse_plan_options(const json& j);

OptimizationRequest make_request(const NetworkTopology& topology,
                                 const std::vector<SubscriberForecast>& forecasts,
                                 const PlannerConfig& config, const PlanOptions& options);

/// Evaluation document; the CLI and the HTTP API both emit exactly this.
json evaluation_document(const NetworkTopology& topology,
                         const std::vector<SubscriberForecast>& forecasts,
                         const PlannerConfig& config, const RehomingScenario& scenario);

/// One runbook per scenario of the plan, in plan order.
json runbook_document(const std::vector<RehomingScenario>& scenarios,
                      const NetworkTopology& topology);
std::string runbook_text(const std::vector<RehomingScenario>& scenarios,
                         const NetworkTopology& topology);

/// {code, message, violations?}
json error_document(const PlannerError& e);
int http_status(ErrorCode code);

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// Transport-free request handler. All state lives in the workspace store.
class PlannerService {
 public:
  explicit PlannerService(WorkspaceStore& store) : store_(store) {}

  /// `target` is the request path with an optional query string.
  HttpResponse handle(std::string_view method, std::string_view target,
                      const std::string& body) const;

 private:
  HttpResponse create_workspace(const std::string& body) const;
  HttpResponse get_workspace(const std::string& id) const;
  HttpResponse evaluate(const std::string& id, const std::string& body) const;
  HttpResponse plan(const std::string& id, const std::string& body) const;
  HttpResponse runbook(const std::string& id, const std::string& plan_id,
                       const std::map<std::string, std::string>& query) const;

  WorkspaceStore& store_;
};

/// httplib front end for PlannerService. Adds permissive CORS headers so a
/// browser client on another origin can call it.
class HttpServer {
 public:
  explicit HttpServer(const PlannerService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  bool listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rehome
