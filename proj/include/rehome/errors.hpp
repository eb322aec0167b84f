#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rehome {

enum class ErrorCode {
  NotFound,
  InvalidInput,
  InvalidModel,
  Parse,
  Unclassifiable,
  InvalidScenario,
  InfeasibleDelta,
  InvalidBaseline,
  InvalidComparison,
  IncompletePlan,
  Storage,
};

std::string_view to_string(ErrorCode code);

/// A rule broken by a topology or scenario. Violations are reported as data,
/// never thrown on their own.
struct Violation {
  std::string node_id;
  std::string rule;
  std::string message;

  bool operator==(const Violation&) const = default;
};

class PlannerError : public std::runtime_error {
 public:
  PlannerError(ErrorCode code, const std::string& message,
               std::vector<Violation> violations = {})
      : std::runtime_error(message), code_(code), violations_(std::move(violations)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  ErrorCode code_;
  std::vector<Violation> violations_;
};

}  // namespace rehome
