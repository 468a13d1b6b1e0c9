#pragma once

// Label-setting pricing for mission paths (elementary shortest path with
// time windows and prizes).

#include "rmp.hpp"

#include <algorithm>
#include <bitset>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace dcg {

inline constexpr int kMaxPricingJobs = 128;
using JobSet = std::bitset<kMaxPricingJobs>;
inline constexpr double kNoCompletedPath = std::numeric_limits<double>::infinity();

struct MissionLabel {
  int job = -1;  ///< -1 at the depot
  JobSet visited;
  TimeStep time = 0;  ///< first period the vehicle is free to travel on
  double reduced_cost = 0.0;
  int parent = -1;
  TimeStep work_start = 0;
  int depth = 0;
};

/// Dominance between labels at the same job: fewer visited jobs, earlier
/// and cheaper. Equal labels dominate each other.
inline bool dominates(const MissionLabel& a, const MissionLabel& b) {
  if (a.job != b.job) throw std::logic_error("dominates: labels at different locations");
  return (a.visited & ~b.visited).none() && a.time <= b.time && a.reduced_cost <= b.reduced_cost;
}

struct MissionPricingOptions {
  int cap = 0;                  ///< max paths returned; 0 keeps every negative path
  double epsilon = 1e-6;
  bool dominance = true;
  bool early_completion = true; ///< false: branch on every feasible start time
  /// Optional [job][period] mask; work may only occupy allowed periods.
  std::vector<std::vector<char>> allowed_work;
  /// Optional forced first jobs (in order) and the jobs allowed after them.
  std::vector<JobId> prefix;
  std::optional<std::vector<JobId>> continuation;
  long max_labels = 0;          ///< 0: unlimited
};

struct PricedMission {
  MissionPath path;
  double reduced_cost = 0.0;
};

struct MissionPricingResult {
  std::vector<PricedMission> columns;  ///< negative paths, most negative first
  double best_reduced_cost = 0.0;      ///< min over all completed paths (0 if none)
  long labels = 0;
  bool truncated = false;              ///< label budget exhausted
};

inline MissionPricingResult price_mission(const Instance& inst, const DualPrices& duals,
                                          const MissionPricingOptions& opt = {}) {
  const int n = inst.num_jobs();
  if (n > kMaxPricingJobs) throw std::invalid_argument("price_mission: too many jobs for the label bitset");
  MissionPricingResult res;
  res.best_reduced_cost = kNoCompletedPath;

  std::vector<char> continuation_ok(static_cast<std::size_t>(n), 1);
  if (opt.continuation) {
    std::fill(continuation_ok.begin(), continuation_ok.end(), 0);
    for (JobId i : *opt.continuation) continuation_ok[static_cast<std::size_t>(i)] = 1;
  }
  auto work_allowed = [&](JobId i, TimeStep s, int len) {
    if (opt.allowed_work.empty()) return true;
    const auto& row = opt.allowed_work[static_cast<std::size_t>(i)];
    for (TimeStep t = s; t < s + len; ++t)
      if (!row[static_cast<std::size_t>(t)]) return false;
    return true;
  };
  // Prefix sums of linking prices per job for O(1) work-interval sums.
  std::vector<std::vector<double>> xi_sum(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& ps = xi_sum[static_cast<std::size_t>(i)];
    ps.assign(static_cast<std::size_t>(inst.horizon) + 1, 0.0);
    for (TimeStep t = 0; t < inst.horizon; ++t) ps[static_cast<std::size_t>(t) + 1] = ps[static_cast<std::size_t>(t)] + duals.link(i, t);
  }

  std::vector<MissionLabel> labels;
  std::vector<char> alive;
  std::vector<std::vector<int>> at_job(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> bucket(static_cast<std::size_t>(inst.horizon) + 1);
  labels.push_back({-1, {}, 0, duals.rho, -1, 0, 0});
  alive.push_back(1);
  bucket[0].push_back(0);

  struct Done {
    double rc;
    int label;
  };
  std::vector<Done> done;

  auto insert = [&](MissionLabel&& l) {
    auto& here = at_job[static_cast<std::size_t>(l.job)];
    if (opt.dominance) {
      for (int k : here)
        if (alive[static_cast<std::size_t>(k)] && dominates(labels[static_cast<std::size_t>(k)], l)) return;
      for (int k : here)
        if (alive[static_cast<std::size_t>(k)] && dominates(l, labels[static_cast<std::size_t>(k)]))
          alive[static_cast<std::size_t>(k)] = 0;
      std::erase_if(here, [&](int k) { return !alive[static_cast<std::size_t>(k)]; });
    }
    const int id = static_cast<int>(labels.size());
    bucket[static_cast<std::size_t>(l.time)].push_back(id);
    here.push_back(id);
    labels.push_back(std::move(l));
    alive.push_back(1);
    const MissionLabel& nl = labels.back();
    if (nl.depth >= static_cast<int>(opt.prefix.size())) {
      const double rc = nl.reduced_cost + inst.depot_job_distance(nl.job);
      res.best_reduced_cost = std::min(res.best_reduced_cost, rc);
      if (rc < -opt.epsilon) done.push_back({rc, id});
    }
  };

  for (TimeStep now = 0; now <= inst.horizon; ++now) {
    for (std::size_t b = 0; b < bucket[static_cast<std::size_t>(now)].size(); ++b) {
      const int id = bucket[static_cast<std::size_t>(now)][b];
      if (!alive[static_cast<std::size_t>(id)]) continue;
      if (opt.max_labels > 0 && static_cast<long>(labels.size()) >= opt.max_labels) {
        res.truncated = true;
        break;
      }
      const MissionLabel cur = labels[static_cast<std::size_t>(id)];
      for (JobId j = 0; j < n; ++j) {
        if (cur.visited.test(static_cast<std::size_t>(j))) continue;
        if (cur.depth < static_cast<int>(opt.prefix.size())) {
          if (opt.prefix[static_cast<std::size_t>(cur.depth)] != j) continue;
        } else if (!continuation_ok[static_cast<std::size_t>(j)]) {
          continue;
        }
        const Job& jb = inst.jobs[static_cast<std::size_t>(j)];
        const double leg = cur.job < 0 ? inst.depot_job_distance(j) : inst.job_distance(cur.job, j);
        const TimeStep arrive = cur.time + (cur.job < 0 ? inst.depot_job_travel(j) : inst.job_travel(cur.job, j));
        const TimeStep last_start = std::min(jb.window_end - jb.workload + 1,
                                             inst.horizon - inst.depot_job_travel(j) - jb.workload);
        for (TimeStep s = std::max(arrive, jb.window_start); s <= last_start; ++s) {
          if (!work_allowed(j, s, jb.workload)) continue;
          MissionLabel nl;
          nl.job = j;
          nl.visited = cur.visited;
          nl.visited.set(static_cast<std::size_t>(j));
          nl.time = s + jb.workload;
          nl.work_start = s;
          nl.parent = id;
          nl.depth = cur.depth + 1;
          const auto& ps = xi_sum[static_cast<std::size_t>(j)];
          nl.reduced_cost = cur.reduced_cost + leg - duals.pi[static_cast<std::size_t>(j)] +
                            (ps[static_cast<std::size_t>(s + jb.workload)] - ps[static_cast<std::size_t>(s)]);
          insert(std::move(nl));
          if (opt.early_completion) break;
        }
      }
    }
    if (res.truncated) break;
  }
  res.labels = static_cast<long>(labels.size());
  if (res.best_reduced_cost == kNoCompletedPath) res.best_reduced_cost = 0.0;

  auto rebuild = [&](int id) {
    std::vector<Visit> visits;
    for (int k = id; labels[static_cast<std::size_t>(k)].job >= 0; k = labels[static_cast<std::size_t>(k)].parent) {
      const MissionLabel& l = labels[static_cast<std::size_t>(k)];
      visits.push_back({l.job, l.work_start, l.work_start + inst.job(l.job).workload - 1});
    }
    std::reverse(visits.begin(), visits.end());
    return make_mission_path(inst, std::move(visits));
  };
  std::stable_sort(done.begin(), done.end(), [](const Done& a, const Done& b) { return a.rc < b.rc; });
  for (const Done& d : done) {
    if (opt.cap > 0 && static_cast<int>(res.columns.size()) >= opt.cap) break;
    res.columns.push_back({rebuild(d.label), d.rc});
  }
  return res;
}

}  // namespace dcg
