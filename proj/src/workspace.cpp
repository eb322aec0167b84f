#include "rehome/workspace.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <random>
#include <set>

namespace rehome {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void storage_fail(const fs::path& path, const std::string& what) {
  throw PlannerError(ErrorCode::Storage, what + " '" + path.string() + "': " + std::strerror(errno));
}

class FileLock {
 public:
  FileLock(const fs::path& path, bool exclusive) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) storage_fail(path, "cannot open lock file");
    int rc;
    do {
      rc = ::flock(fd_, exclusive ? LOCK_EX : LOCK_SH);
    } while (rc != 0 && errno == EINTR);
    if (rc != 0) {
      ::close(fd_);
      storage_fail(path, "cannot lock");
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const auto t = std::chrono::system_clock::to_time_t(now);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
  return out;
}

std::string random_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  static const char* digits = "0123456789abcdef";
  std::string id = "ws-";
  auto bits = rng();
  for (int i = 0; i < 12; ++i) {
    id += digits[bits & 0xf];
    bits >>= 4;
  }
  return id;
}

void write_all(int fd, const std::string& text, const fs::path& path) {
  const char* p = text.data();
  std::size_t left = text.size();
  while (left > 0) {
    const auto n = ::write(fd, p, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      storage_fail(path, "write failed for");
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
}

std::vector<Violation> forecast_violations(const NetworkTopology& topology,
                                           const std::vector<SubscriberForecast>& forecasts) {
  std::vector<Violation> out;
  std::set<Id> seen;
  for (const auto& f : forecasts) {
    if (!topology.find_switch(f.switch_id))
      out.push_back({f.switch_id, "unknown-switch", "forecast names a switch not in the topology"});
    if (!seen.insert(f.switch_id).second)
      out.push_back({f.switch_id, "duplicate-forecast", "more than one forecast for the switch"});
    try {
      validate_subscriber_forecast(f);
    } catch (const PlannerError& e) {
      out.push_back({f.switch_id, "forecast-months", e.what()});
    }
  }
  return out;
}

}  // namespace

bool valid_workspace_id(const std::string& id) {
  if (id.empty() || id.size() > 128) return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_';
    if (!ok) return false;
  }
  return true;
}

json to_json(const Workspace& w) {
  json plans = json::object();
  for (const auto& [id, p] : w.plans) {
    json scenarios = json::array();
    for (const auto& s : p.scenarios) scenarios.push_back(to_json(s));
    plans[id] = {{"id", p.id}, {"scenarios", scenarios}, {"result", p.result}};
  }
  return {{"id", w.id},
          {"created_at", w.created_at},
          {"modified_at", w.modified_at},
          {"topology", to_json(w.topology)},
          {"forecast", to_json(w.forecasts)},
          {"config", to_json(w.config)},
          {"plans", plans}};
}

Workspace parse_workspace(const json& j) {
  if (!j.is_object()) throw PlannerError(ErrorCode::Parse, "workspace: expected an object");
  Workspace w;
  try {
    w.id = j.at("id").get<std::string>();
    w.created_at = j.at("created_at").get<std::string>();
    w.modified_at = j.at("modified_at").get<std::string>();
    w.topology = parse_topology(j.at("topology"));
    w.forecasts = parse_forecasts(j.at("forecast"));
    w.config = parse_config(j.at("config"));
    for (const auto& [id, p] : j.at("plans").items()) {
      SavedPlan plan;
      plan.id = p.at("id").get<std::string>();
      plan.scenarios = parse_plan_scenarios(p);
      plan.result = p.at("result");
      w.plans.emplace(id, std::move(plan));
    }
  } catch (const json::exception& e) {
    throw PlannerError(ErrorCode::Parse, std::string("workspace: ") + e.what());
  }
  return w;
}

WorkspaceStore::WorkspaceStore(fs::path directory) : dir_(std::move(directory)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_))
    throw PlannerError(ErrorCode::Storage, "cannot create workspace directory '" + dir_.string() +
                                               "': " + ec.message());
}

fs::path WorkspaceStore::default_directory() {
  if (const char* env = std::getenv("PLANNER_WORKSPACE_DIR"); env && *env) return env;
  return "workspaces";
}

fs::path WorkspaceStore::path_for(const std::string& id) const {
  if (!valid_workspace_id(id))
    throw PlannerError(ErrorCode::NotFound, "no workspace '" + id + "'");
  return dir_ / (id + ".json");
}

bool WorkspaceStore::exists(const std::string& id) const {
  return valid_workspace_id(id) && fs::exists(path_for(id));
}

Workspace WorkspaceStore::load(const std::string& id) const {
  const auto path = path_for(id);
  FileLock lock(dir_ / ".lock", false);
  if (!fs::exists(path)) throw PlannerError(ErrorCode::NotFound, "no workspace '" + id + "'");
  return parse_workspace(read_json_file(path));
}

std::vector<std::string> WorkspaceStore::list() const {
  std::vector<std::string> ids;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    const auto name = entry.path().filename().string();
    if (entry.path().extension() != ".json" || name.front() == '.') continue;
    ids.push_back(entry.path().stem().string());
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

void WorkspaceStore::write_locked(Workspace& w) {
  const auto target = path_for(w.id);
  static std::atomic<unsigned> counter{0};
  const auto temp = dir_ / ("." + w.id + ".json.tmp." + std::to_string(::getpid()) + "." +
                            std::to_string(counter++));
  const auto text = to_json(w).dump(2) + "\n";

  const int fd = ::open(temp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) storage_fail(temp, "cannot create");
  try {
    write_all(fd, text, temp);
    if (::fsync(fd) != 0) storage_fail(temp, "fsync failed for");
  } catch (...) {
    ::close(fd);
    fs::remove(temp);
    throw;
  }
  ::close(fd);

  if (before_commit_) before_commit_(temp);
  if (::rename(temp.c_str(), target.c_str()) != 0) {
    const int saved = errno;
    fs::remove(temp);
    errno = saved;
    storage_fail(target, "cannot replace");
  }
}

void WorkspaceStore::save(Workspace& w) {
  FileLock lock(dir_ / ".lock", true);
  w.modified_at = utc_now();
  if (w.created_at.empty()) w.created_at = w.modified_at;
  write_locked(w);
}

Workspace WorkspaceStore::create(NetworkTopology topology,
                                 std::vector<SubscriberForecast> forecasts,
                                 PlannerConfig config) {
  auto violations = validate_topology(topology);
  const auto fv = forecast_violations(topology, forecasts);
  violations.insert(violations.end(), fv.begin(), fv.end());
  if (!violations.empty())
    throw PlannerError(ErrorCode::InvalidInput, "workspace inputs do not validate",
                       std::move(violations));

  Workspace w;
  w.topology = std::move(topology);
  w.forecasts = std::move(forecasts);
  w.config = std::move(config);

  FileLock lock(dir_ / ".lock", true);
  do {
    w.id = random_id();
  } while (fs::exists(path_for(w.id)));
  w.created_at = w.modified_at = utc_now();
  write_locked(w);
  return w;
}

Workspace WorkspaceStore::update(const std::string& id,
                                 const std::function<void(Workspace&)>& mutate) {
  const auto path = path_for(id);
  FileLock lock(dir_ / ".lock", true);
  if (!fs::exists(path)) throw PlannerError(ErrorCode::NotFound, "no workspace '" + id + "'");
  auto w = parse_workspace(read_json_file(path));
  mutate(w);
  w.id = id;
  w.modified_at = utc_now();
  write_locked(w);
  return w;
}

std::string WorkspaceStore::add_plan(const std::string& workspace_id,
                                     std::vector<RehomingScenario> scenarios, json result) {
  std::string plan_id;
  update(workspace_id, [&](Workspace& w) {
    std::vector<Violation> violations;
    for (const auto& s : scenarios) {
      const auto v = validate_scenario(s, w.topology);
      violations.insert(violations.end(), v.begin(), v.end());
    }
    if (!violations.empty())
      throw PlannerError(ErrorCode::InvalidScenario, "plan scenarios do not validate",
                         std::move(violations));
    for (std::size_t n = w.plans.size() + 1;; ++n) {
      plan_id = "plan-" + std::to_string(n);
      if (!w.plans.contains(plan_id)) break;
    }
    w.plans.emplace(plan_id, SavedPlan{plan_id, std::move(scenarios), std::move(result)});
  });
  return plan_id;
}

}  // namespace rehome
