#include "rehome/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>

#include "rehome/service.hpp"

namespace rehome {

namespace {

struct Inputs {
  std::string topology;
  std::string forecast;
  std::string config;
};

void add_inputs(CLI::App* cmd, Inputs& in, bool need_forecast) {
  cmd->add_option("-t,--topology", in.topology, "topology.json")->required()->check(CLI::ExistingFile);
  auto* f = cmd->add_option("-f,--forecast", in.forecast, "forecast.json")->check(CLI::ExistingFile);
  if (need_forecast) f->required();
  cmd->add_option("-c,--config", in.config, "config.json (defaults when omitted)")
      ->check(CLI::ExistingFile);
}

PlannerConfig load_config(const Inputs& in) {
  return in.config.empty() ? PlannerConfig{} : parse_config(read_json_file(in.config));
}

std::string money(Money m) {
  char buf[48];
  const auto whole = m.cents / 100;
  const auto frac = std::llabs(m.cents % 100);
  std::snprintf(buf, sizeof buf, "%s%lld.%02lld", (m.cents < 0 && whole == 0) ? "-" : "",
                static_cast<long long>(whole), static_cast<long long>(frac));
  return buf;
}

void print_violations(std::ostream& out, const std::vector<Violation>& vs) {
  if (vs.empty()) {
    out << "violations: none\n";
    return;
  }
  out << "violations:\n";
  for (const auto& v : vs) out << "  [" << v.rule << "] " << v.node_id << ": " << v.message << "\n";
}

std::string month_name(const MonthUtilization& m) {
  return m.label ? *m.label : std::to_string(m.n);
}

void print_series(std::ostream& out, const UtilizationSeries& s) {
  out << "switch " << s.switch_id << "\n";
  out << "  " << std::left << std::setw(10) << "month" << std::right << std::setw(14) << "erlang"
      << std::setw(14) << "bhca" << std::setw(12) << "trunks" << std::setw(10) << "ss7" << "\n";
  out << std::fixed;
  for (const auto& m : s.months) {
    out << "  " << std::left << std::setw(10) << month_name(m) << std::right << std::setprecision(2)
        << std::setw(14) << m.traffic_erlang << std::setw(14) << std::setprecision(0) << m.bhca
        << std::setw(12) << std::setprecision(2) << m.trunks << std::setw(10)
        << std::setprecision(4) << m.ss7_util << "\n";
  }
  out.unsetf(std::ios::fixed);
}

void print_cost(std::ostream& out, const CostReport& c) {
  out << "cost without re-homing: " << money(c.cost_without_rehoming) << "\n"
      << "cost with re-homing:    " << money(c.cost_with_rehoming) << "\n"
      << "savings:                " << money(c.savings) << "\n";
  for (const auto& b : c.breaches) {
    out << "  breach: " << b.switch_id << " month " << b.month << " " << b.criterion << " "
        << b.value << " > " << b.limit << "\n";
  }
}

void print_evaluation(std::ostream& out, const Evaluation& e) {
  out << "moved: ";
  for (const auto& c : e.scenario.moved_controllers) out << c << " ";
  out << "-> ";
  for (const auto& t : e.scenario.target_switch_ids) out << t << " ";
  out << "(re-homing month " << e.scenario.rehoming_month << ", effective "
      << e.scenario.effective_month() << ")\n";
  if (e.classification) {
    out << "model: " << e.classification->model_number << " ("
        << to_string(e.classification->source_kind) << " -> "
        << to_string(e.classification->target_kind) << ")\n";
  } else {
    out << "model: unclassified (" << e.classification_error << ")\n";
  }
  print_violations(out, e.violations);
  if (e.trigger_month) out << "re-homing trigger month: " << *e.trigger_month << "\n";
  out << std::fixed << std::setprecision(2);
  for (const auto& s : e.switches) {
    out << "switch " << s.before.switch_id
        << (e.source_switch_ids.contains(s.before.switch_id) ? " (source)" : " (target)") << "\n";
    out << "  " << std::left << std::setw(10) << "month" << std::right << std::setw(14)
        << "trunks before" << std::setw(14) << "trunks after" << "\n";
    for (std::size_t i = 0; i < s.before.months.size(); ++i) {
      out << "  " << std::left << std::setw(10) << month_name(s.before.months[i]) << std::right
          << std::setw(14) << s.before.months[i].trunks << std::setw(14)
          << s.after.months[i].trunks << "\n";
    }
  }
  out.unsetf(std::ios::fixed);
  if (e.cost) print_cost(out, *e.cost);
}

void print_plan(std::ostream& out, const OptimizationResult& r) {
  out << "objective: " << to_string(r.objective) << " (" << to_string(r.backend_used)
      << " search, re-homing month " << r.rehoming_month << ")\n";
  if (r.scenarios.empty()) out << "plan: keep current homing\n";
  for (const auto& s : r.scenarios) {
    out << "move:";
    for (const auto& c : s.moved_controllers) out << " " << c;
    out << " ->";
    for (const auto& t : s.target_switch_ids) out << " " << t;
    out << "\n";
  }
  out << "feasible: " << (r.feasible() ? "yes" : "no") << "\n"
      << "peak utilization: " << r.score.peak_utilization << "\n";
  print_cost(out, r.cost);
  out << "searched " << r.stats.plans_examined << " plans over " << r.stats.candidates
      << " candidate moves\n";
}

void emit_error(std::ostream& out, std::ostream& err, bool as_json, const PlannerError& e) {
  if (as_json) out << error_document(e).dump(2) << "\n";
  err << "error: " << e.what() << "\n";
  for (const auto& v : e.violations())
    err << "  [" << v.rule << "] " << v.node_id << ": " << v.message << "\n";
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Core-network re-homing planner", args.empty() ? "rehome-planner" : args[0]};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable JSON output");

  Inputs in;

  auto* validate = app.add_subcommand("validate", "check a topology against the structural rules");
  validate->add_option("-t,--topology", in.topology, "topology.json")
      ->required()
      ->check(CLI::ExistingFile);
  validate->add_flag("--json", as_json, "JSON output");

  auto* forecast = app.add_subcommand("forecast", "per-switch traffic, BHCA, trunk and SS7 series");
  add_inputs(forecast, in, true);
  std::string only_switch;
  forecast->add_option("--switch", only_switch, "restrict to one switch");
  forecast->add_flag("--json", as_json, "JSON output");

  auto* evaluate = app.add_subcommand("evaluate", "classify, validate and cost one scenario");
  add_inputs(evaluate, in, true);
  std::string scenario_file;
  evaluate->add_option("-s,--scenario", scenario_file, "scenario.json")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_flag("--json", as_json, "JSON output");

  auto* plan = app.add_subcommand("plan", "search for the best re-homing plan");
  add_inputs(plan, in, true);
  std::string objective = "min-cost";
  std::string backend = "auto";
  int max_moves = 1;
  std::optional<double> threshold;
  std::optional<int> horizon;
  std::optional<int> rehoming_month;
  std::string out_file;
  plan->add_option("--objective", objective, "min-cost or min-peak-utilization")
      ->check(CLI::IsMember({"min-cost", "min-peak-utilization"}));
  plan->add_option("--max-moves", max_moves, "moves per plan")->check(CLI::Range(0, 64));
  plan->add_option("--threshold", threshold, "load threshold on max capacity, in (0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  plan->add_option("--horizon", horizon, "months considered")->check(CLI::PositiveNumber);
  plan->add_option("--backend", backend, "auto, greedy or exhaustive")
      ->check(CLI::IsMember({"auto", "greedy", "exhaustive"}));
  plan->add_option("--rehoming-month", rehoming_month, "execution month of every move")
      ->check(CLI::PositiveNumber);
  plan->add_option("-o,--out", out_file, "write the plan document here");
  plan->add_flag("--json", as_json, "JSON output");

  auto* runbook = app.add_subcommand("runbook", "cutover runbook for a plan or scenario file");
  runbook->add_option("-t,--topology", in.topology, "topology.json")
      ->required()
      ->check(CLI::ExistingFile);
  std::string plan_file;
  std::string rb_out;
  runbook->add_option("-p,--plan", plan_file, "plan.json or scenario.json")
      ->required()
      ->check(CLI::ExistingFile);
  runbook->add_option("-o,--out", rb_out, "write the runbook here");
  runbook->add_flag("--json", as_json, "JSON output (text checklist otherwise)");

  auto* serve = app.add_subcommand("serve", "run the HTTP planning service");
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string dir;
  serve->add_option("--port", port, "listen port")->check(CLI::Range(1, 65535));
  serve->add_option("--host", host, "listen address");
  serve->add_option("--dir", dir, "workspace directory (PLANNER_WORKSPACE_DIR, else ./workspaces)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("rehome-planner");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) {
      const auto topology = parse_topology(read_json_file(in.topology));
      const auto violations = validate_topology(topology);
      if (as_json) out << json{{"valid", violations.empty()}, {"violations", to_json(violations)}}.dump(2) << "\n";
      else print_violations(out, violations);
      return violations.empty() ? kExitOk : kExitFailure;
    }

    if (*forecast) {
      const auto topology = parse_topology(read_json_file(in.topology));
      const auto forecasts = parse_forecasts(read_json_file(in.forecast));
      const auto config = load_config(in);
      json doc = json::array();
      bool found = only_switch.empty();
      for (const auto& f : forecasts) {
        if (!only_switch.empty() && f.switch_id != only_switch) continue;
        found = true;
        if (!topology.find_switch(f.switch_id))
          throw PlannerError(ErrorCode::InvalidInput, "forecast names unknown switch '" + f.switch_id + "'");
        const auto series = build_utilization_series(f, config.traffic, config.ss7);
        if (as_json) doc.push_back(to_json(series));
        else print_series(out, series);
      }
      if (!found) throw PlannerError(ErrorCode::NotFound, "no forecast for switch '" + only_switch + "'");
      if (as_json) out << doc.dump(2) << "\n";
      return kExitOk;
    }

    if (*evaluate) {
      const auto topology = parse_topology(read_json_file(in.topology));
      const auto forecasts = parse_forecasts(read_json_file(in.forecast));
      const auto config = load_config(in);
      const auto scenario = parse_scenario(read_json_file(scenario_file));
      const auto e = evaluate_scenario(topology, index_forecasts(forecasts), config, scenario);
      if (as_json) out << to_json(e).dump(2) << "\n";
      else print_evaluation(out, e);
      return e.valid() ? kExitOk : kExitFailure;
    }

    if (*plan) {
      const auto topology = parse_topology(read_json_file(in.topology));
      const auto forecasts = parse_forecasts(read_json_file(in.forecast));
      const auto config = load_config(in);
      PlanOptions options;
      options.objective = parse_objective(objective);
      options.backend = parse_backend(backend);
      options.max_moves = max_moves;
      options.threshold = threshold;
      options.horizon = horizon;
      options.rehoming_month = rehoming_month;
      const auto result = optimize(make_request(topology, forecasts, config, options));
      const auto doc = to_json(result);
      if (!out_file.empty()) write_text_file(out_file, doc.dump(2) + "\n");
      if (as_json) out << doc.dump(2) << "\n";
      else print_plan(out, result);
      return kExitOk;
    }

    if (*runbook) {
      const auto topology = parse_topology(read_json_file(in.topology));
      const auto scenarios = parse_plan_scenarios(read_json_file(plan_file));
      const auto text = as_json ? runbook_document(scenarios, topology).dump(2) + "\n"
                                : runbook_text(scenarios, topology);
      if (!rb_out.empty()) write_text_file(rb_out, text);
      out << text;
      return kExitOk;
    }

    if (*serve) {
      WorkspaceStore store(dir.empty() ? WorkspaceStore::default_directory() : std::filesystem::path(dir));
      PlannerService service(store);
      HttpServer server(service);
      const int bound = server.bind(host, port);
      if (bound < 0) {
        err << "error: cannot listen on " << host << ":" << port << "\n";
        return kExitFailure;
      }
      out << "serving on http://" << host << ":" << bound << " (workspaces in "
          << store.directory().string() << ")" << std::endl;
      return server.listen() ? kExitOk : kExitFailure;
    }
  } catch (const PlannerError& e) {
    emit_error(out, err, as_json, e);
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace rehome
