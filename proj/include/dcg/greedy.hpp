#pragma once

// Nearest-job greedy: each route is a mission vehicle with its own emitter.

#include "paths.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

namespace dcg {

struct GreedyPlan {
  std::vector<MissionPath> missions;
  std::vector<EmittingPath> emitters;
  bool feasible = true;
  std::vector<JobId> unserved;
};

namespace detail {

struct Placement {
  TimeStep start = 0;
  SpotId spot = 0;
};

/// Earliest placement of job j for a mission vehicle at `mjob` (-1 depot)
/// free at `mready` and an emitter at `espot` (-1 depot) free at `eready`.
/// Covering spots are tried in order of distance from the emitter.
inline std::optional<Placement> place(const Instance& inst, JobId j, int mjob, TimeStep mready, int espot,
                                      TimeStep eready, TimeStep estay_start) {
  const Job& jb = inst.job(j);
  const TimeStep am = mready + (mjob < 0 ? inst.depot_job_travel(j) : inst.job_travel(mjob, j));
  std::vector<SpotId> spots = inst.coverage(j);
  auto dist = [&](SpotId s) {
    return espot < 0 ? inst.depot_spot_distance(s) : inst.spot_distance(espot, s);
  };
  std::stable_sort(spots.begin(), spots.end(), [&](SpotId a, SpotId b) { return dist(a) < dist(b); });
  for (SpotId s : spots) {
    // Staying at the current spot keeps the stay open from its start.
    const TimeStep ae = s == espot ? estay_start : eready + (espot < 0 ? inst.depot_spot_travel(s) : inst.spot_travel(espot, s));
    const TimeStep start = std::max({am, ae, jb.window_start});
    const TimeStep end = start + jb.workload - 1;
    if (end > jb.window_end) continue;
    if (end + 1 + inst.depot_job_travel(j) > inst.horizon) continue;
    if (end + 1 + inst.depot_spot_travel(s) > inst.horizon) continue;
    return Placement{start, s};
  }
  return std::nullopt;
}

}  // namespace detail

/// Routes are built one at a time. The mission vehicle always moves to the
/// nearest job it can still complete (ties: lower job id) with its emitter
/// in place at the closest feasible covering spot; work waits for the
/// emitter if needed. A route closes when no job fits.
inline GreedyPlan greedy_plan(const Instance& inst) {
  GreedyPlan plan;
  std::vector<char> done(static_cast<std::size_t>(inst.num_jobs()), 0);
  int remaining = inst.num_jobs();
  while (remaining > 0) {
    std::vector<Visit> visits;
    std::vector<Stay> stays;
    int mjob = -1, espot = -1;
    TimeStep mready = 0, eready = 0;
    while (true) {
      int best = -1;
      double best_d = 0.0;
      detail::Placement best_p;
      for (JobId j = 0; j < inst.num_jobs(); ++j) {
        if (done[static_cast<std::size_t>(j)]) continue;
        const double d = mjob < 0 ? inst.depot_job_distance(j) : inst.job_distance(mjob, j);
        if (best >= 0 && d >= best_d - 1e-12) continue;
        const auto p = detail::place(inst, j, mjob, mready, espot, eready, stays.empty() ? 0 : stays.back().arrive);
        if (!p) continue;
        best = j;
        best_d = d;
        best_p = *p;
      }
      if (best < 0) break;
      const Job& jb = inst.job(best);
      const TimeStep end = best_p.start + jb.workload - 1;
      visits.push_back({best, best_p.start, end});
      if (!stays.empty() && stays.back().spot == best_p.spot) {
        stays.back().depart = end;
      } else {
        stays.push_back({best_p.spot, best_p.start, end});
      }
      done[static_cast<std::size_t>(best)] = 1;
      --remaining;
      mjob = best;
      mready = end + 1;
      espot = best_p.spot;
      eready = end + 1;
    }
    if (visits.empty()) {
      plan.feasible = false;
      for (JobId j = 0; j < inst.num_jobs(); ++j)
        if (!done[static_cast<std::size_t>(j)]) plan.unserved.push_back(j);
      break;
    }
    plan.missions.push_back(make_mission_path(inst, std::move(visits)));
    plan.emitters.push_back(make_emitting_path(inst, std::move(stays)));
  }
  if (static_cast<int>(plan.missions.size()) > inst.mission_fleet ||
      static_cast<int>(plan.emitters.size()) > inst.emitter_fleet)
    plan.feasible = false;
  return plan;
}

}  // namespace dcg
