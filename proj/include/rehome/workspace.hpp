#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rehome/io.hpp"

namespace rehome {

/// A plan kept with its workspace: the scenarios it applies and the result
/// document produced when it was computed.
struct SavedPlan {
  std::string id;
  std::vector<RehomingScenario> scenarios;
  json result;

  bool operator==(const SavedPlan&) const = default;
};

struct Workspace {
  std::string id;
  NetworkTopology topology;
  std::vector<SubscriberForecast> forecasts;
  PlannerConfig config;
  std::map<std::string, SavedPlan> plans;
  std::string created_at;   // UTC, ISO 8601
  std::string modified_at;

  bool operator==(const Workspace&) const = default;
};

json to_json(const Workspace& w);
Workspace parse_workspace(const json& j);

/// One JSON file per workspace under a directory. Saves replace the file
/// atomically (write temp, fsync, rename). Writers hold an exclusive flock on
/// <dir>/.lock; readers take it shared.
class WorkspaceStore {
 public:
  /// Creates the directory if needed. Throws PlannerError(Storage) with the
  /// path when it cannot.
  explicit WorkspaceStore(std::filesystem::path directory);

  /// $PLANNER_WORKSPACE_DIR, else ./workspaces.
  static std::filesystem::path default_directory();

  const std::filesystem::path& directory() const noexcept { return dir_; }

  /// Validates topology and forecasts (InvalidInput with violations), assigns
  /// a fresh id and persists.
  Workspace create(NetworkTopology topology, std::vector<SubscriberForecast> forecasts,
                   PlannerConfig config);

  bool exists(const std::string& id) const;
  /// Throws PlannerError(NotFound).
  Workspace load(const std::string& id) const;
  void save(Workspace& workspace);
  std::vector<std::string> list() const;

  /// Load, mutate and save under one exclusive lock.
  Workspace update(const std::string& id, const std::function<void(Workspace&)>& mutate);

  /// Stores a plan after checking every scenario against the topology
  /// snapshot. Returns the new plan id.
  std::string add_plan(const std::string& workspace_id, std::vector<RehomingScenario> scenarios,
                       json result);

  /// Test hook run after the temp file is complete and before the rename.
  /// A throwing hook simulates a crash at that point.
  void set_before_commit_hook(std::function<void(const std::filesystem::path& temp)> hook) {
    before_commit_ = std::move(hook);
  }

  std::filesystem::path path_for(const std::string& id) const;

 private:
  void write_locked(Workspace& workspace);

  std::filesystem::path dir_;
  std::function<void(const std::filesystem::path&)> before_commit_;
};

/// Workspace ids are restricted to [A-Za-z0-9_-] so they map to file names.
bool valid_workspace_id(const std::string& id);

}  // namespace rehome
