#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "rehome/io.hpp"
#include "rehome/optimizer.hpp"

namespace rehome::testing {

std::filesystem::path fixture_path(const std::string& relative);

struct Inputs {
  NetworkTopology topology;
  std::vector<SubscriberForecast> forecasts;
  PlannerConfig config;
};

/// topology.json, forecast.json and config.json of one fixture directory.
Inputs load_inputs(const std::string& fixture_dir);
RehomingScenario load_scenario(const std::string& relative);

/// Erlang B by summing the truncated Poisson series in 50-digit arithmetic.
double erlang_b_oracle(double offered_erlang, std::int64_t lines);
/// Smallest m whose oracle blocking is at or below the target.
std::int64_t erlang_b_lines_oracle(double offered_erlang, double target);

/// Random network that passes validate_topology: one or two markets, MSS
/// groups of MGWs, a few MSCs and RNC/BSC controllers in every homing shape.
NetworkTopology random_topology(std::mt19937_64& rng);

/// Random scenario drawn from shapes that are mostly valid.
RehomingScenario random_scenario(const NetworkTopology& topology, std::mt19937_64& rng);

/// Small optimizer instance: at most 3 switches and 6 controllers, with
/// forecasts large enough to absorb any move.
OptimizationRequest random_instance(std::mt19937_64& rng, int max_moves);

/// Larger instance for benchmarking.
OptimizationRequest bench_instance(std::uint64_t seed, int switches, int controllers, int months);

/// Renames every id through `f`, keeping structure.
NetworkTopology rename_topology(const NetworkTopology& t, const std::function<Id(const Id&)>& f);

}  // namespace rehome::testing
