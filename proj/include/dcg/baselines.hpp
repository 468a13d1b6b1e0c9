#pragma once

// Reference strategies: nearest-job greedy, emitters that follow mission
// routes, mission-first then emitter optimisation, and stationary emitters.

#include "engine.hpp"

#include <limits>
#include <set>
#include <string>
#include <vector>

namespace dcg {

struct PlanMetrics {
  double objective = 0.0;
  double mission_distance = 0.0;
  double emitter_distance = 0.0;
  /// Mission distance over emitter distance; infinite when emitters never move.
  double distance_ratio = 0.0;
  int mission_vehicles = 0;
  int emitter_vehicles = 0;
  int coverage_locations = 0;  ///< distinct spots visited by any emitter
};

inline PlanMetrics plan_metrics(const std::vector<MissionPath>& missions, const std::vector<EmittingPath>& emitters) {
  PlanMetrics m;
  std::set<SpotId> spots;
  for (const auto& q : missions) m.mission_distance += q.cost;
  for (const auto& p : emitters) {
    m.emitter_distance += p.cost;
    for (const Stay& s : p.stays) spots.insert(s.spot);
  }
  m.objective = m.mission_distance + m.emitter_distance;
  m.distance_ratio = m.emitter_distance > 0.0 ? m.mission_distance / m.emitter_distance
                                              : std::numeric_limits<double>::infinity();
  m.mission_vehicles = static_cast<int>(missions.size());
  m.emitter_vehicles = static_cast<int>(emitters.size());
  m.coverage_locations = static_cast<int>(spots.size());
  return m;
}

struct BaselinePlan {
  std::string strategy;
  std::vector<MissionPath> missions;
  std::vector<EmittingPath> emitters;
  bool feasible = false;
  std::string message;  ///< reason when infeasible
  PlanMetrics metrics;
};

namespace detail {

inline BaselinePlan finish_plan(const Instance& inst, BaselinePlan plan) {
  plan.metrics = plan_metrics(plan.missions, plan.emitters);
  if (plan.feasible) {
    const auto rep = validate(inst, plan.missions, plan.emitters);
    if (!rep.ok()) {
      plan.feasible = false;
      plan.message = rep.summary();
    }
  }
  return plan;
}

/// Mission plan from mission-only column generation over the full horizon.
inline std::vector<MissionPath> mission_stage(const Instance& inst, const DcgConfig& cfg) {
  const auto greedy = greedy_plan(inst);
  std::vector<MissionPath> plan;
  mission_only_generation(inst, greedy.missions, cfg, &plan);
  return plan;
}

inline bool serves_all_jobs(const Instance& inst, const std::vector<MissionPath>& plan) {
  std::vector<char> seen(static_cast<std::size_t>(inst.num_jobs()), 0);
  for (const auto& q : plan)
    for (const Visit& v : q.visits) seen[static_cast<std::size_t>(v.job)] = 1;
  for (char c : seen)
    if (!c) return false;
  return true;
}

/// Cheapest spot sequence (one covering spot per visit) for an emitter that
/// shadows a fixed mission schedule, or nothing when no sequence is timely.
inline std::optional<EmittingPath> shadow_fixed_schedule(const Instance& inst, const MissionPath& route) {
  const auto& visits = route.visits;
  const std::size_t k = visits.size();
  constexpr double kNone = std::numeric_limits<double>::infinity();
  // cost[v][s]: cheapest distance so far with visit v covered from spot s.
  std::vector<std::vector<double>> cost(k, std::vector<double>(static_cast<std::size_t>(inst.num_spots()), kNone));
  std::vector<std::vector<int>> from(k, std::vector<int>(static_cast<std::size_t>(inst.num_spots()), -1));
  for (std::size_t v = 0; v < k; ++v) {
    for (SpotId s : inst.coverage(visits[v].job)) {
      auto& best = cost[v][static_cast<std::size_t>(s)];
      if (v == 0) {
        if (inst.depot_spot_travel(s) <= visits[0].work_start) best = inst.depot_spot_distance(s);
        continue;
      }
      for (SpotId r : inst.coverage(visits[v - 1].job)) {
        const double prev = cost[v - 1][static_cast<std::size_t>(r)];
        if (std::isinf(prev)) continue;
        const bool same = r == s;
        if (!same && visits[v - 1].work_end + 1 + inst.spot_travel(r, s) > visits[v].work_start) continue;
        const double c = prev + (same ? 0.0 : inst.spot_distance(r, s));
        if (c < best - 1e-12) {
          best = c;
          from[v][static_cast<std::size_t>(s)] = r;
        }
      }
    }
  }
  int last = -1;
  double total = kNone;
  for (SpotId s : inst.coverage(visits[k - 1].job)) {
    const double c = cost[k - 1][static_cast<std::size_t>(s)];
    if (std::isinf(c) || visits[k - 1].work_end + 1 + inst.depot_spot_travel(s) > inst.horizon) continue;
    if (c + inst.depot_spot_distance(s) < total - 1e-12) {
      total = c + inst.depot_spot_distance(s);
      last = s;
    }
  }
  if (last < 0) return std::nullopt;
  std::vector<int> spot_of(k);
  for (std::size_t v = k; v-- > 0;) {
    spot_of[v] = last;
    last = from[v][static_cast<std::size_t>(last)];
  }
  std::vector<Stay> stays;
  for (std::size_t v = 0; v < k; ++v) {
    if (!stays.empty() && stays.back().spot == spot_of[v])
      stays.back().depart = visits[v].work_end;
    else
      stays.push_back({spot_of[v], visits[v].work_start, visits[v].work_end});
  }
  return make_emitting_path(inst, std::move(stays));
}

/// Same job order, work delayed until an emitter at the nearest reachable
/// covering spot is in place. When a job no longer fits, the route is split
/// and a fresh vehicle pair takes over from the depot. Empty when some job
/// cannot be served even from the depot.
inline std::vector<std::pair<MissionPath, EmittingPath>> shadow_with_delay(const Instance& inst,
                                                                           const MissionPath& route) {
  std::vector<std::pair<MissionPath, EmittingPath>> out;
  std::vector<Visit> visits;
  std::vector<Stay> stays;
  int mjob = -1, espot = -1;
  TimeStep mready = 0, eready = 0;
  auto close = [&] {
    out.emplace_back(make_mission_path(inst, std::move(visits)), make_emitting_path(inst, std::move(stays)));
    visits.clear();
    stays.clear();
    mjob = espot = -1;
    mready = eready = 0;
  };
  for (const Visit& v : route.visits) {
    auto p = place(inst, v.job, mjob, mready, espot, eready, stays.empty() ? 0 : stays.back().arrive);
    if (!p && !visits.empty()) {
      close();
      p = place(inst, v.job, -1, 0, -1, 0, 0);
    }
    if (!p) return {};
    const TimeStep end = p->start + inst.job(v.job).workload - 1;
    visits.push_back({v.job, p->start, end});
    if (!stays.empty() && stays.back().spot == p->spot)
      stays.back().depart = end;
    else
      stays.push_back({p->spot, p->start, end});
    mjob = v.job;
    mready = end + 1;
    espot = p->spot;
    eready = end + 1;
  }
  if (!visits.empty()) close();
  return out;
}

}  // namespace detail

inline BaselinePlan greedy(const Instance& inst) {
  auto g = greedy_plan(inst);
  BaselinePlan plan{"greedy", std::move(g.missions), std::move(g.emitters), g.feasible, {}, {}};
  if (!g.feasible) {
    plan.message = g.unserved.empty() ? "fleet limit exceeded"
                                      : std::to_string(g.unserved.size()) + " jobs cannot be placed";
  }
  return detail::finish_plan(inst, std::move(plan));
}

/// Mission-only optimum, then one emitter per route that hops between the
/// covering spots of consecutive jobs with least travel. Routes the emitter
/// cannot keep up with are retimed, and split if retiming is not enough.
inline BaselinePlan emitting_follow(const Instance& inst, const DcgConfig& cfg = {}) {
  BaselinePlan plan{"emitting-follow", {}, {}, true, {}, {}};
  const auto routes = detail::mission_stage(inst, cfg);
  if (!detail::serves_all_jobs(inst, routes)) {
    plan.feasible = false;
    plan.message = "mission stage leaves jobs unserved";
    return detail::finish_plan(inst, std::move(plan));
  }
  for (const auto& q : routes) {
    if (auto e = detail::shadow_fixed_schedule(inst, q)) {
      plan.missions.push_back(q);
      plan.emitters.push_back(std::move(*e));
    } else if (auto pairs = detail::shadow_with_delay(inst, q); !pairs.empty()) {
      for (auto& [m, e] : pairs) {
        plan.missions.push_back(std::move(m));
        plan.emitters.push_back(std::move(e));
      }
    } else {
      plan.feasible = false;
      plan.message = "no emitter can follow a mission route";
      plan.missions.push_back(q);
    }
  }
  if (static_cast<int>(plan.emitters.size()) > inst.emitter_fleet ||
      static_cast<int>(plan.missions.size()) > inst.mission_fleet) {
    plan.feasible = false;
    plan.message = "more routes than vehicles";
  }
  return detail::finish_plan(inst, std::move(plan));
}

/// Mission-only optimum kept fixed, then emitter-only column generation
/// covering its work periods.
inline BaselinePlan mission_emitting(const Instance& inst, const DcgConfig& cfg = {}) {
  BaselinePlan plan{"mission-emitting", {}, {}, true, {}, {}};
  plan.missions = detail::mission_stage(inst, cfg);
  if (!detail::serves_all_jobs(inst, plan.missions)) {
    plan.feasible = false;
    plan.message = "mission stage leaves jobs unserved";
    return detail::finish_plan(inst, std::move(plan));
  }
  bool ok = false;
  emitter_only_generation(inst, plan.missions, {}, cfg, &plan.emitters, &ok);
  if (!ok) {
    plan.feasible = false;
    plan.message = "emitter stage cannot cover the mission plan";
  }
  return detail::finish_plan(inst, std::move(plan));
}

/// Stationary emitter at `spot`: arrives as early as possible and leaves as
/// late as the return trip allows.
inline std::optional<Stay> stationary_stay(const Instance& inst, SpotId spot) {
  const TimeStep tt = inst.depot_spot_travel(spot);
  const TimeStep depart = inst.horizon - 1 - tt;
  if (tt > depart) return std::nullopt;
  return Stay{spot, tt, depart};
}

/// Whether a stationary emitter at `spot` leaves room to do job `j`.
inline bool stationary_can_serve(const Instance& inst, SpotId spot, JobId j) {
  const auto stay = stationary_stay(inst, spot);
  if (!stay) return false;
  const Job& jb = inst.job(j);
  const TimeStep first = std::max({jb.window_start, stay->arrive, inst.depot_job_travel(j)});
  const TimeStep last = std::min({jb.window_end, stay->depart, inst.horizon - 1 - inst.depot_job_travel(j)});
  return last - first + 1 >= jb.workload;
}

/// Fewest spots whose stationary emitters can serve every job (ties: least
/// total depot distance), by 0/1 set cover. Empty when some job is uncoverable.
inline std::vector<SpotId> minimum_spot_cover(const Instance& inst) {
  lp::LpProblem p;
  double scale = 1.0;
  for (SpotId s = 0; s < inst.num_spots(); ++s) scale += 2.0 * inst.depot_spot_distance(s);
  std::vector<int> vars;
  for (SpotId s = 0; s < inst.num_spots(); ++s)
    vars.push_back(p.add_var(1.0 + 2.0 * inst.depot_spot_distance(s) / scale, 0.0, 1.0));
  for (JobId j = 0; j < inst.num_jobs(); ++j) {
    std::vector<lp::Entry> row;
    for (SpotId s : inst.coverage(j))
      if (stationary_can_serve(inst, s, j)) row.push_back({vars[static_cast<std::size_t>(s)], 1.0});
    if (row.empty()) return {};
    p.add_row(std::move(row), lp::Sense::kGreaterEqual, 1.0);
  }
  const auto sol = lp::solve_binary(p, vars);
  if (sol.status != lp::LpStatus::kOptimal) return {};
  std::vector<SpotId> chosen;
  for (SpotId s = 0; s < inst.num_spots(); ++s)
    if (sol.primal[static_cast<std::size_t>(vars[static_cast<std::size_t>(s)])] > 0.5) chosen.push_back(s);
  return chosen;
}

/// Minimum number of stationary emitters covering all jobs, then mission-only
/// column generation restricted to covered periods.
inline BaselinePlan fixed_emitters(const Instance& inst, const DcgConfig& cfg = {}) {
  BaselinePlan plan{"fixed", {}, {}, true, {}, {}};
  const auto spots = minimum_spot_cover(inst);
  if (spots.empty()) {
    plan.feasible = false;
    plan.message = "some job cannot be covered by a stationary emitter";
    return detail::finish_plan(inst, std::move(plan));
  }
  std::vector<std::vector<char>> allowed(static_cast<std::size_t>(inst.num_jobs()),
                                         std::vector<char>(static_cast<std::size_t>(inst.horizon), 0));
  for (SpotId s : spots) {
    const Stay stay = *stationary_stay(inst, s);
    plan.emitters.push_back(make_emitting_path(inst, {stay}));
    for (JobId j = 0; j < inst.num_jobs(); ++j)
      if (inst.covers(s, j))
        for (TimeStep t = stay.arrive; t <= stay.depart; ++t)
          allowed[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] = 1;
  }
  // Single-job routes at the earliest covered start seed the master.
  std::vector<MissionPath> seed;
  for (JobId j = 0; j < inst.num_jobs(); ++j) {
    const Job& jb = inst.job(j);
    const auto& row = allowed[static_cast<std::size_t>(j)];
    const TimeStep last_end = std::min(jb.window_end, inst.horizon - 1 - inst.depot_job_travel(j));
    for (TimeStep a = std::max(jb.window_start, inst.depot_job_travel(j)); a + jb.workload - 1 <= last_end; ++a) {
      bool ok = true;
      for (TimeStep t = a; t < a + jb.workload && ok; ++t) ok = row[static_cast<std::size_t>(t)] != 0;
      if (!ok) continue;
      seed.push_back(make_mission_path(inst, {{j, a, a + jb.workload - 1}}));
      break;
    }
  }
  mission_only_generation(inst, seed, cfg, &plan.missions, allowed);
  if (!detail::serves_all_jobs(inst, plan.missions)) {
    plan.feasible = false;
    plan.message = "mission stage leaves jobs unserved";
  }
  return detail::finish_plan(inst, std::move(plan));
}

/// Joint optimisation through the double column generation engine.
inline BaselinePlan joint(const Instance& inst, const DcgConfig& cfg = {}, DcgResult* details = nullptr) {
  DcgResult r = run(inst, cfg);
  BaselinePlan plan{"dcg", r.missions, r.emitters, r.feasible, r.feasible ? "" : "no feasible integer plan", {}};
  if (details) *details = std::move(r);
  return detail::finish_plan(inst, std::move(plan));
}

}  // namespace dcg
