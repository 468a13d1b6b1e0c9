#pragma once

// Mission and emitting path columns: costs, feasibility checks and the
// work/coverage indicators used by the master problem.

#include "instance.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace dcg {

struct Visit {
  JobId job = 0;
  TimeStep work_start = 0;
  TimeStep work_end = 0;
  friend bool operator==(const Visit&, const Visit&) = default;
};

struct MissionPath {
  std::vector<Visit> visits;
  double cost = 0.0;
  friend bool operator==(const MissionPath&, const MissionPath&) = default;
};

struct Stay {
  SpotId spot = 0;
  TimeStep arrive = 0;
  TimeStep depart = 0;
  friend bool operator==(const Stay&, const Stay&) = default;
};

struct EmittingPath {
  std::vector<Stay> stays;
  double cost = 0.0;
  friend bool operator==(const EmittingPath&, const EmittingPath&) = default;
};

/// (job, period) pair; used for work and coverage indicators.
using JobTime = std::pair<JobId, TimeStep>;

inline double mission_cost(const Instance& inst, const std::vector<Visit>& visits) {
  if (visits.empty()) return 0.0;
  double c = inst.depot_job_distance(visits.front().job) + inst.depot_job_distance(visits.back().job);
  for (std::size_t k = 1; k < visits.size(); ++k) c += inst.job_distance(visits[k - 1].job, visits[k].job);
  return c;
}

inline double emitting_cost(const Instance& inst, const std::vector<Stay>& stays) {
  if (stays.empty()) return 0.0;
  double c = inst.depot_spot_distance(stays.front().spot) + inst.depot_spot_distance(stays.back().spot);
  for (std::size_t k = 1; k < stays.size(); ++k) c += inst.spot_distance(stays[k - 1].spot, stays[k].spot);
  return c;
}

inline MissionPath make_mission_path(const Instance& inst, std::vector<Visit> visits) {
  MissionPath p{std::move(visits), 0.0};
  p.cost = mission_cost(inst, p.visits);
  return p;
}

inline EmittingPath make_emitting_path(const Instance& inst, std::vector<Stay> stays) {
  EmittingPath p{std::move(stays), 0.0};
  p.cost = emitting_cost(inst, p.stays);
  return p;
}

/// Work placed at the earliest start for each job in the given order, or an
/// empty visit list when the order is not schedulable.
inline std::vector<Visit> earliest_schedule(const Instance& inst, const std::vector<JobId>& order) {
  std::vector<Visit> out;
  TimeStep ready = 0;
  int prev = -1;
  for (JobId i : order) {
    const Job& jb = inst.job(i);
    const TimeStep arrive = ready + (prev < 0 ? inst.depot_job_travel(i) : inst.job_travel(prev, i));
    const TimeStep start = std::max(arrive, jb.window_start);
    if (start + jb.workload - 1 > jb.window_end) return {};
    out.push_back({i, start, start + jb.workload - 1});
    ready = start + jb.workload;
    prev = i;
  }
  if (prev >= 0 && ready + inst.depot_job_travel(prev) > inst.horizon) return {};
  return out;
}

/// Human-readable problems with a mission path; empty when feasible.
inline std::vector<std::string> mission_path_errors(const Instance& inst, const MissionPath& p) {
  std::vector<std::string> err;
  if (p.visits.empty()) err.push_back("mission path visits no job");
  TimeStep ready = 0;
  int prev = -1;
  std::vector<char> seen(static_cast<std::size_t>(inst.num_jobs()), 0);
  for (const Visit& v : p.visits) {
    if (v.job < 0 || v.job >= inst.num_jobs()) {
      err.push_back("unknown job " + std::to_string(v.job));
      return err;
    }
    const Job& jb = inst.job(v.job);
    const std::string tag = "job " + std::to_string(v.job);
    if (seen[static_cast<std::size_t>(v.job)]++) err.push_back(tag + " visited twice on one path");
    if (v.work_end - v.work_start + 1 != jb.workload) err.push_back(tag + ": work length differs from workload");
    if (v.work_start < jb.window_start || v.work_end > jb.window_end) err.push_back(tag + ": work outside window");
    const TimeStep arrive = ready + (prev < 0 ? inst.depot_job_travel(v.job) : inst.job_travel(prev, v.job));
    if (v.work_start < arrive) err.push_back(tag + ": work starts before the vehicle can arrive");
    ready = v.work_end + 1;
    prev = v.job;
  }
  if (prev >= 0 && ready + inst.depot_job_travel(prev) > inst.horizon)
    err.push_back("mission path returns to depot after the horizon");
  if (std::abs(mission_cost(inst, p.visits) - p.cost) > 1e-6) err.push_back("mission path cost is inconsistent");
  return err;
}

inline std::vector<std::string> emitting_path_errors(const Instance& inst, const EmittingPath& p) {
  std::vector<std::string> err;
  if (p.stays.empty()) err.push_back("emitting path has no stay");
  TimeStep ready = 0;
  int prev = -1;
  for (const Stay& s : p.stays) {
    if (s.spot < 0 || s.spot >= inst.num_spots()) {
      err.push_back("unknown spot " + std::to_string(s.spot));
      return err;
    }
    const std::string tag = "spot " + std::to_string(s.spot);
    if (s.arrive > s.depart) err.push_back(tag + ": stay departs before it starts");
    const TimeStep arrive = ready + (prev < 0 ? inst.depot_spot_travel(s.spot) : inst.spot_travel(prev, s.spot));
    if (s.arrive < arrive) err.push_back(tag + ": stay starts before the emitter can arrive");
    ready = s.depart + 1;
    prev = s.spot;
  }
  if (prev >= 0 && ready + inst.depot_spot_travel(prev) > inst.horizon)
    err.push_back("emitting path returns to depot after the horizon");
  if (std::abs(emitting_cost(inst, p.stays) - p.cost) > 1e-6) err.push_back("emitting path cost is inconsistent");
  return err;
}

/// Periods with work in progress, as sorted (job, t) pairs.
inline std::vector<JobTime> work_indicator(const MissionPath& p) {
  std::vector<JobTime> out;
  for (const Visit& v : p.visits)
    for (TimeStep t = v.work_start; t <= v.work_end; ++t) out.emplace_back(v.job, t);
  std::sort(out.begin(), out.end());
  return out;
}

/// Covered (job, t) pairs restricted to each job's window, sorted.
inline std::vector<JobTime> coverage_indicator(const Instance& inst, const EmittingPath& p) {
  std::vector<JobTime> out;
  for (const Stay& s : p.stays)
    for (JobId i : inst.covered_jobs(s.spot)) {
      const Job& jb = inst.job(i);
      for (TimeStep t = std::max(s.arrive, jb.window_start); t <= std::min(s.depart, jb.window_end); ++t)
        out.emplace_back(i, t);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Sequence of visited locations (job ids), used by stem-and-blender.
inline std::vector<int> location_sequence(const MissionPath& p) {
  std::vector<int> out;
  for (const Visit& v : p.visits) out.push_back(v.job);
  return out;
}

inline std::vector<int> location_sequence(const EmittingPath& p) {
  std::vector<int> out;
  for (const Stay& s : p.stays) out.push_back(s.spot);
  return out;
}

}  // namespace dcg
