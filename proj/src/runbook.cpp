#include "rehome/runbook.hpp"

#include <json.hpp>

#include <algorithm>
#include <queue>
#include <regex>
#include <set>
#include <sstream>

namespace rehome {

extern const char* const kRunbookTemplateJson;

std::string_view to_string(RunbookPhase phase) {
  switch (phase) {
    case RunbookPhase::Preparation: return "Preparation";
    case RunbookPhase::Cutover: return "Cutover";
    case RunbookPhase::Completion: return "Completion";
  }
  return "unknown";
}

const std::string& CutoverState::get(const std::string& variable) const {
  static const std::string missing;
  auto it = values_.find(variable);
  return it == values_.end() ? missing : it->second;
}

bool CutoverState::matches(const std::map<std::string, std::string>& predicates) const {
  for (const auto& [var, value] : predicates) {
    if (get(var) != value) return false;
  }
  return true;
}

CutoverState RunbookTemplate::initial_state() const {
  std::map<std::string, std::string> values;
  for (const auto& [name, var] : variables) values[name] = var.initial;
  return CutoverState(std::move(values));
}

bool RunbookTemplate::is_terminal(const CutoverState& state) const {
  return state.matches(terminal);
}

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw PlannerError(ErrorCode::Parse, "runbook template: " + what);
}

RunbookPhase parse_phase(const std::string& s) {
  if (s == "Preparation") return RunbookPhase::Preparation;
  if (s == "Cutover") return RunbookPhase::Cutover;
  if (s == "Completion") return RunbookPhase::Completion;
  fail("unknown phase '" + s + "'");
}

std::map<std::string, std::string> parse_assignments(const json& j) {
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) out[k] = v.get<std::string>();
  return out;
}

void check_template(const RunbookTemplate& t) {
  if (t.steps.empty()) fail("no steps");
  auto check_vars = [&](const std::map<std::string, std::string>& m, int index) {
    for (const auto& [var, value] : m) {
      auto it = t.variables.find(var);
      if (it == t.variables.end())
        fail("step " + std::to_string(index) + " uses undeclared variable '" + var + "'");
      const auto& allowed = it->second.values;
      if (std::find(allowed.begin(), allowed.end(), value) == allowed.end())
        fail("step " + std::to_string(index) + " uses value '" + value + "' for '" + var + "'");
    }
  };
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& s = t.steps[i];
    if (s.index != static_cast<int>(i) + 1) fail("step indices must run 1..N in order");
    for (int r : s.requires_steps) {
      if (r < 1 || r > static_cast<int>(t.steps.size()) || r == s.index)
        fail("step " + std::to_string(s.index) + " requires unknown step " + std::to_string(r));
    }
    check_vars(s.preconditions, s.index);
    check_vars(s.effects, s.index);
  }
  check_vars(t.terminal, 0);

  // Kahn's algorithm over the requirement edges.
  const std::size_t n = t.steps.size();
  std::vector<int> indegree(n, 0);
  std::vector<std::vector<std::size_t>> dependents(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int r : t.steps[i].requires_steps) {
      dependents[static_cast<std::size_t>(r - 1)].push_back(i);
      ++indegree[i];
    }
  }
  std::queue<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push(i);
  std::size_t visited = 0;
  while (!ready.empty()) {
    auto i = ready.front();
    ready.pop();
    ++visited;
    for (auto d : dependents[i])
      if (--indegree[d] == 0) ready.push(d);
  }
  if (visited != n) fail("step requirements contain a cycle");
}

std::string replace_all(std::string text, const std::string& from, const std::string& to) {
  for (std::size_t pos = text.find(from); pos != std::string::npos;
       pos = text.find(from, pos + to.size()))
    text.replace(pos, from.size(), to);
  return text;
}

std::string adapt_to_3g(const std::string& text) {
  static const std::regex bsc("\\bBSC\\b");
  static const std::regex bts("\\bBTS\\b");
  static const std::regex msc("\\bMSC\\b");
  auto out = std::regex_replace(text, bsc, "RNC");
  out = std::regex_replace(out, bts, "Node-B");
  return std::regex_replace(out, msc, "MSS/MGW");
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

}  // namespace

RunbookTemplate parse_runbook_template(const std::string& json_text) {
  RunbookTemplate t;
  try {
    const auto j = json::parse(json_text);
    t.name = j.value("name", std::string{});
    for (const auto& [name, v] : j.at("variables").items()) {
      StateVariable var;
      var.initial = v.at("initial").get<std::string>();
      var.values = v.at("values").get<std::vector<std::string>>();
      if (std::find(var.values.begin(), var.values.end(), var.initial) == var.values.end())
        fail("initial value of '" + name + "' is not among its values");
      t.variables.emplace(name, std::move(var));
    }
    t.terminal = parse_assignments(j.at("terminal"));
    for (const auto& s : j.at("steps")) {
      RunbookStep step;
      step.index = s.at("index").get<int>();
      step.phase = parse_phase(s.at("phase").get<std::string>());
      step.description = s.at("description").get<std::string>();
      step.requires_steps = s.at("requires").get<std::vector<int>>();
      step.preconditions = parse_assignments(s.at("preconditions"));
      step.effects = parse_assignments(s.at("effects"));
      t.steps.push_back(std::move(step));
    }
  } catch (const json::exception& e) {
    fail(e.what());
  }
  check_template(t);
  return t;
}

const RunbookTemplate& default_runbook_template() {
  static const RunbookTemplate t = parse_runbook_template(kRunbookTemplateJson);
  return t;
}

Runbook generate_runbook(const RehomingScenario& scenario, const NetworkTopology& topology,
                         const RunbookTemplate& tmpl) {
  Runbook rb;
  rb.scenario = scenario;
  if (scenario.moved_controllers.empty()) return rb;
  if (scenario.target_switch_ids.empty())
    throw PlannerError(ErrorCode::IncompletePlan, "plan has no target switches");

  for (const auto& id : scenario.moved_controllers) {
    const auto* c = topology.find_controller(id);
    if (!c) throw PlannerError(ErrorCode::IncompletePlan, "plan moves unknown controller '" + id + "'");
    if (c->kind == ControllerKind::Rnc) rb.adapted = true;
  }
  for (const auto& id : scenario.target_switch_ids) {
    if (!topology.find_switch(id))
      throw PlannerError(ErrorCode::IncompletePlan, "plan targets unknown switch '" + id + "'");
  }
  const auto sources = source_switches(scenario, topology);
  if (sources.empty())
    throw PlannerError(ErrorCode::IncompletePlan, "moved controllers have no current homing");

  const auto moved = join(scenario.moved_controllers);
  const auto source = join({sources.begin(), sources.end()});
  const auto target = join({scenario.target_switch_ids.begin(), scenario.target_switch_ids.end()});

  for (auto step : tmpl.steps) {
    auto text = rb.adapted ? adapt_to_3g(step.description) : step.description;
    text = replace_all(std::move(text), "{moved}", moved);
    text = replace_all(std::move(text), "{source}", source);
    step.description = replace_all(std::move(text), "{target}", target);
    step.adapted = rb.adapted;
    rb.steps.push_back(std::move(step));
  }
  return rb;
}

SimulationResult simulate_runbook(const std::vector<RunbookStep>& steps, CutoverState initial) {
  SimulationResult result;
  result.final_state = std::move(initial);
  for (const auto& step : steps) {
    for (const auto& [var, expected] : step.preconditions) {
      const auto& actual = result.final_state.get(var);
      if (actual != expected) {
        result.violation_step = step.index;
        result.violation_detail = "step " + std::to_string(step.index) + " needs " + var + "=" +
                                  expected + " but found " + var + "=" +
                                  (actual.empty() ? "<unset>" : actual);
        return result;
      }
    }
    for (const auto& [var, value] : step.effects) result.final_state.set(var, value);
  }
  return result;
}

std::string render_runbook_text(const Runbook& rb) {
  std::ostringstream out;
  if (rb.steps.empty()) {
    out << "No re-homing planned; runbook is empty.\n";
    return out.str();
  }
  out << "Re-homing runbook: " << join(rb.scenario.moved_controllers) << " -> "
      << join({rb.scenario.target_switch_ids.begin(), rb.scenario.target_switch_ids.end()})
      << " (executed in month " << rb.scenario.rehoming_month << ")\n";
  if (rb.adapted) out << "NOTE: adapted 3G procedure (entity names substituted into the 2G skeleton)\n";
  for (const auto& s : rb.steps) {
    out << (s.index < 10 ? " " : "") << s.index << ". [" << to_string(s.phase) << "] "
        << s.description;
    if (s.adapted) out << " [adapted]";
    out << "\n";
    if (!s.preconditions.empty()) {
      out << "     requires:";
      for (const auto& [var, value] : s.preconditions) out << " " << var << "=" << value;
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace rehome
