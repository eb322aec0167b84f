#include "rehome/optimizer.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <tuple>

namespace rehome {

std::string_view to_string(Objective objective) {
  return objective == Objective::MinCost ? "min-cost" : "min-peak-utilization";
}

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::Auto: return "auto";
    case Backend::Greedy: return "greedy";
    case Backend::Exhaustive: return "exhaustive";
  }
  return "unknown";
}

std::vector<RehomingScenario> enumerate_candidates(const NetworkTopology& topology,
                                                   int rehoming_month) {
  struct Keyed {
    Id controller;
    Id target_key;
    RehomingScenario scenario;
  };
  std::vector<Keyed> keyed;

  for (const auto& c : topology.controllers()) {
    if (c.homed_to.empty()) continue;
    const auto* home = topology.find_switch(*c.homed_to.begin());
    if (!home) continue;
    const Id& market = home->market_id;
    if (!topology.find_market(market)) continue;

    auto consider = [&](const Id& key, IdSet targets) {
      RehomingScenario s{{c.id}, std::move(targets), rehoming_month};
      if (validate_scenario(s, topology).empty()) keyed.push_back({c.id, key, std::move(s)});
    };
    for (const auto& mss : topology.mss()) {
      auto targets = switches_in_market(topology, mss.id, market);
      if (!targets.empty()) consider(mss.id, std::move(targets));
    }
    if (c.kind == ControllerKind::Bsc) {
      for (const auto& s : topology.switches()) {
        if (s.kind == SwitchKind::Msc2G && s.market_id == market && !c.homed_to.contains(s.id))
          consider(s.id, IdSet{s.id});
      }
    }
  }

  std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.controller, a.target_key) < std::tie(b.controller, b.target_key);
  });
  std::vector<RehomingScenario> out;
  out.reserve(keyed.size());
  for (auto& k : keyed) out.push_back(std::move(k.scenario));
  return out;
}

void validate_request(const OptimizationRequest& request) {
  if (request.horizon && *request.horizon < 1)
    throw PlannerError(ErrorCode::InvalidInput, "horizon must be at least 1");
  if (!(request.load_threshold > 0.0 && request.load_threshold <= 1.0))
    throw PlannerError(ErrorCode::InvalidInput, "load_threshold must lie in (0, 1]");
  if (request.max_moves < 0) throw PlannerError(ErrorCode::InvalidInput, "max_moves must be non-negative");
  if (request.rehoming_month && *request.rehoming_month < 1)
    throw PlannerError(ErrorCode::InvalidInput, "rehoming_month must be at least 1");
  auto violations = validate_topology(request.topology);
  if (!violations.empty())
    throw PlannerError(ErrorCode::InvalidInput, "topology is not valid", std::move(violations));
  validate_traffic_model(request.config.traffic);
  validate_ss7_model(request.config.ss7);
}

namespace {

std::map<Id, UtilizationSeries> baseline_series(const OptimizationRequest& request) {
  std::map<Id, UtilizationSeries> out;
  for (const auto& f : request.forecasts) {
    if (!request.topology.find_switch(f.switch_id)) continue;
    auto series = build_utilization_series(f, request.config.traffic, request.config.ss7);
    if (request.horizon && series.months.size() > static_cast<std::size_t>(*request.horizon))
      series.months.resize(static_cast<std::size_t>(*request.horizon));
    out.emplace(f.switch_id, std::move(series));
  }
  return out;
}

int first_breach(const NetworkTopology& topology, const std::map<Id, UtilizationSeries>& before) {
  std::optional<int> month;
  for (const auto& [id, series] : before) {
    if (auto m = headroom_breach_month(series, topology.switch_at(id).capacity))
      month = month ? std::min(*month, *m) : *m;
  }
  return month.value_or(1);
}

struct Key {
  bool infeasible = false;
  double objective = 0.0;
  std::size_t moves = 0;

  bool operator<(const Key& o) const {
    return std::tie(infeasible, objective, moves) < std::tie(o.infeasible, o.objective, o.moves);
  }
  bool improves_on(const Key& o) const {
    return std::tie(infeasible, objective) < std::tie(o.infeasible, o.objective);
  }
};

Key key_of(const PlanScore& s, std::size_t moves) { return {!s.feasible, s.objective_value, moves}; }

/// Per-switch baselines and per-candidate deltas, shared read-only by every
/// plan evaluation.
class PlanEvaluator {
 public:
  PlanEvaluator(const OptimizationRequest& request, int rehoming_month,
                const std::vector<RehomingScenario>& candidates)
      : request_(request), effective_month_(rehoming_month + 1), before_(baseline_series(request)) {
    deltas_.reserve(candidates.size());
    usable_.reserve(candidates.size());
    for (const auto& c : candidates) {
      auto deltas = compute_deltas(c, request.topology);
      const bool usable = std::all_of(deltas.begin(), deltas.end(), [&](const TrafficDelta& d) {
        return before_.contains(d.switch_id);
      });
      deltas_.push_back(std::move(deltas));
      usable_.push_back(usable);
    }
  }

  bool usable(std::size_t candidate) const { return usable_[candidate]; }

  std::optional<PlanScore> score(std::span<const std::size_t> plan) const {
    PlanScore s;
    auto series = after_series(plan);
    if (!series) return std::nullopt;
    for (const auto& [id, after] : *series) {
      const auto& cap = request_.topology.switch_at(id).capacity;
      if (auto exp = first_expansion(after, cap, request_.config.costing))
        s.cost_with += expansion_cost(*exp, request_.config.prices);
      double peak = 0.0;
      for (const auto& m : after.months) peak = std::max(peak, utilization_ratio(m, cap));
      s.peaks.push_back({id, peak});
      s.peak_utilization = std::max(s.peak_utilization, peak);
      if (peak > request_.load_threshold) s.feasible = false;
    }
    s.objective_value = request_.objective == Objective::MinCost ? s.cost_with.to_decimal()
                                                                  : s.peak_utilization;
    return s;
  }

  CostReport cost_report(std::span<const std::size_t> plan) const {
    auto series = after_series(plan);
    if (!series) throw PlannerError(ErrorCode::InfeasibleDelta, "plan drives a switch load below zero");
    std::vector<CostReport> reports;
    for (const auto& [id, after] : *series) {
      reports.push_back(compare_futures(before_.at(id), after,
                                        request_.topology.switch_at(id).capacity,
                                        request_.config.prices, request_.config.costing));
    }
    return combine_reports(reports, request_.config.prices);
  }

 private:
  std::optional<std::map<Id, UtilizationSeries>> after_series(
      std::span<const std::size_t> plan) const {
    // Deltas of concurrent moves compose additively per switch.
    std::map<Id, TrafficDelta> summed;
    for (auto idx : plan) {
      for (const auto& d : deltas_[idx]) {
        auto& acc = summed[d.switch_id];
        acc.switch_id = d.switch_id;
        acc.erlang_delta += d.erlang_delta;
        acc.trunk_delta += d.trunk_delta;
        acc.sign = acc.erlang_delta < 0.0 ? DeltaSign::SourceLoses : DeltaSign::TargetGains;
      }
    }
    std::map<Id, UtilizationSeries> out;
    for (const auto& [id, before] : before_) {
      auto it = summed.find(id);
      if (it == summed.end()) {
        out.emplace(id, before);
        continue;
      }
      try {
        out.emplace(id, forecast_after(before, it->second, effective_month_, request_.config.ss7));
      } catch (const PlannerError& e) {
        if (e.code() == ErrorCode::InfeasibleDelta || e.code() == ErrorCode::InvalidBaseline)
          return std::nullopt;
        throw;
      }
    }
    return out;
  }

  const OptimizationRequest& request_;
  int effective_month_;
  std::map<Id, UtilizationSeries> before_;
  std::vector<std::vector<TrafficDelta>> deltas_;
  std::vector<bool> usable_;
};

using Plan = std::vector<std::size_t>;

/// Scores every plan. The Parallel policy fills slots concurrently; callers
/// reduce over the slots in order, so completion order never matters.
std::vector<std::optional<PlanScore>> score_all(const PlanEvaluator& eval,
                                                const std::vector<Plan>& plans,
                                                ExecutionPolicy policy) {
  std::vector<std::optional<PlanScore>> scores(plans.size());
  const auto count = static_cast<std::int64_t>(plans.size());
  if (policy == ExecutionPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) scores[i] = eval.score(plans[i]);
  } else {
    for (std::int64_t i = 0; i < count; ++i) scores[i] = eval.score(plans[i]);
  }
  return scores;
}

struct Best {
  Plan plan;
  PlanScore score;
};

/// Plans of up to `max_moves` candidates, one move per controller, in
/// (size, lexicographic) order. Stops early once more than `limit` exist.
std::vector<Plan> enumerate_plans(const std::vector<RehomingScenario>& candidates,
                                  const PlanEvaluator& eval, int max_moves, std::size_t limit) {
  std::vector<Plan> out{Plan{}};
  std::vector<Plan> frontier{Plan{}};
  for (int size = 1; size <= max_moves && !frontier.empty(); ++size) {
    std::vector<Plan> next;
    for (const auto& base : frontier) {
      const std::size_t start = base.empty() ? 0 : base.back() + 1;
      for (std::size_t c = start; c < candidates.size(); ++c) {
        if (!eval.usable(c)) continue;
        const auto& ctrl = candidates[c].moved_controllers.front();
        const bool clash = std::any_of(base.begin(), base.end(), [&](std::size_t b) {
          return candidates[b].moved_controllers.front() == ctrl;
        });
        if (clash) continue;
        Plan p = base;
        p.push_back(c);
        next.push_back(std::move(p));
        if (out.size() + next.size() > limit) return {};
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

int resolve_rehoming_month(const OptimizationRequest& request) {
  if (request.rehoming_month) return *request.rehoming_month;
  return first_breach(request.topology, baseline_series(request));
}

std::optional<PlanScore> evaluate_plan(const OptimizationRequest& request,
                                       const std::vector<RehomingScenario>& plan) {
  const int month = plan.empty() ? resolve_rehoming_month(request) : plan.front().rehoming_month;
  for (const auto& s : plan) {
    if (s.rehoming_month != month)
      throw PlannerError(ErrorCode::InvalidInput, "plan moves must share one rehoming month");
  }
  PlanEvaluator eval(request, month, plan);
  Plan all(plan.size());
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (!eval.usable(i)) return std::nullopt;
    all[i] = i;
  }
  return eval.score(all);
}

OptimizationResult optimize(const OptimizationRequest& request, ExecutionPolicy policy) {
  validate_request(request);

  OptimizationResult result;
  result.objective = request.objective;
  result.rehoming_month = resolve_rehoming_month(request);

  const auto candidates = enumerate_candidates(request.topology, result.rehoming_month);
  const PlanEvaluator eval(request, result.rehoming_month, candidates);
  result.stats.candidates = candidates.size();
  for (std::size_t c = 0; c < candidates.size(); ++c)
    if (!eval.usable(c)) ++result.stats.pruned;

  auto empty_score = eval.score(Plan{});
  if (!empty_score)
    throw PlannerError(ErrorCode::InvalidBaseline, "baseline forecasts cannot be evaluated");
  ++result.stats.plans_examined;
  Best best{Plan{}, *empty_score};

  std::vector<Plan> exhaustive;
  if (request.backend != Backend::Greedy) {
    const auto limit = request.backend == Backend::Exhaustive
                           ? std::numeric_limits<std::size_t>::max()
                           : request.exhaustive_bound;
    exhaustive = enumerate_plans(candidates, eval, request.max_moves, limit);
  }

  if (!exhaustive.empty()) {
    result.backend_used = Backend::Exhaustive;
    const auto scores = score_all(eval, exhaustive, policy);
    result.stats.plans_examined += exhaustive.size() - 1;
    for (std::size_t i = 1; i < exhaustive.size(); ++i) {
      if (!scores[i]) {
        ++result.stats.pruned;
        continue;
      }
      if (key_of(*scores[i], exhaustive[i].size()) < key_of(best.score, best.plan.size()))
        best = {exhaustive[i], *scores[i]};
    }
  } else {
    result.backend_used = Backend::Greedy;
    for (int round = 0; round < request.max_moves; ++round) {
      std::vector<Plan> extensions;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (!eval.usable(c)) continue;
        const auto& ctrl = candidates[c].moved_controllers.front();
        const bool clash = std::any_of(best.plan.begin(), best.plan.end(), [&](std::size_t b) {
          return candidates[b].moved_controllers.front() == ctrl;
        });
        if (clash) continue;
        Plan p = best.plan;
        p.push_back(c);
        extensions.push_back(std::move(p));
      }
      const auto scores = score_all(eval, extensions, policy);
      result.stats.plans_examined += extensions.size();

      std::optional<Best> round_best;
      for (std::size_t i = 0; i < extensions.size(); ++i) {
        if (!scores[i]) {
          ++result.stats.pruned;
          continue;
        }
        if (!round_best || key_of(*scores[i], extensions[i].size()) <
                               key_of(round_best->score, round_best->plan.size()))
          round_best = Best{extensions[i], *scores[i]};
      }
      if (!round_best || !key_of(round_best->score, round_best->plan.size())
                              .improves_on(key_of(best.score, best.plan.size())))
        break;
      best = std::move(*round_best);
    }
  }

  std::sort(best.plan.begin(), best.plan.end());
  for (auto idx : best.plan) result.scenarios.push_back(candidates[idx]);
  result.score = best.score;
  result.cost = eval.cost_report(best.plan);
  return result;
}

}  // namespace rehome
