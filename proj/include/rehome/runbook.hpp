#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rehome/rehoming.hpp"
#include "rehome/topology.hpp"

namespace rehome {

enum class RunbookPhase { Preparation, Cutover, Completion };

std::string_view to_string(RunbookPhase phase);

/// Cutover state as named variables (cell, external-cell, TRX, connection
/// and CGI status). The variable set comes from the runbook template.
class CutoverState {
 public:
  CutoverState() = default;
  explicit CutoverState(std::map<std::string, std::string> values) : values_(std::move(values)) {}

  const std::string& get(const std::string& variable) const;
  void set(const std::string& variable, std::string value) { values_[variable] = std::move(value); }
  bool matches(const std::map<std::string, std::string>& predicates) const;
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

  bool operator==(const CutoverState&) const = default;

 private:
  std::map<std::string, std::string> values_;
};

struct RunbookStep {
  int index = 0;
  RunbookPhase phase = RunbookPhase::Preparation;
  std::string description;
  /// Steps that must already have run.
  std::vector<int> requires_steps;
  std::map<std::string, std::string> preconditions;
  std::map<std::string, std::string> effects;
  bool adapted = false;

  bool operator==(const RunbookStep&) const = default;
};

struct StateVariable {
  std::string initial;
  std::vector<std::string> values;

  bool operator==(const StateVariable&) const = default;
};

/// The step skeleton. Descriptions use the 2G entity names and the
/// placeholders {moved}, {source}, {target}.
struct RunbookTemplate {
  std::string name;
  std::map<std::string, StateVariable> variables;
  std::map<std::string, std::string> terminal;
  std::vector<RunbookStep> steps;

  CutoverState initial_state() const;
  bool is_terminal(const CutoverState& state) const;
};

/// Parses and checks a template document (contiguous indices, declared
/// variables and values, acyclic requirements). Throws PlannerError(Parse).
RunbookTemplate parse_runbook_template(const std::string& json_text);

/// The template compiled into the library from data/runbook_template.json.
const RunbookTemplate& default_runbook_template();

struct Runbook {
  RehomingScenario scenario;
  bool adapted = false;
  std::vector<RunbookStep> steps;
};

/// Instantiates the template for one scenario. RNC moves get the 3G entity
/// names and are flagged adapted. Throws PlannerError(IncompletePlan) when
/// the scenario names nodes the topology lacks.
Runbook generate_runbook(const RehomingScenario& scenario, const NetworkTopology& topology,
                         const RunbookTemplate& tmpl = default_runbook_template());

struct SimulationResult {
  CutoverState final_state;
  std::optional<int> violation_step;  // index of the first step whose preconditions failed
  std::string violation_detail;

  bool ok() const { return !violation_step.has_value(); }
};

SimulationResult simulate_runbook(const std::vector<RunbookStep>& steps, CutoverState initial);

/// Numbered checklist for people.
std::string render_runbook_text(const Runbook& runbook);

}  // namespace rehome
