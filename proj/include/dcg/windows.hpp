#pragma once

// Per-spot entry/exit time restrictions for emitter pricing.

#include "rmp.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace dcg {

struct SpotWindow {
  std::vector<char> entry;  ///< [period] a stay may start here
  std::vector<char> exit;   ///< [period] a stay may end here (last covered period)
};

struct TimeWindows {
  std::vector<SpotWindow> spots;

  std::vector<TimeStep> entries(SpotId j) const { return list(spots.at(static_cast<std::size_t>(j)).entry); }
  std::vector<TimeStep> exits(SpotId j) const { return list(spots.at(static_cast<std::size_t>(j)).exit); }
  bool usable(SpotId j) const {
    const auto& w = spots.at(static_cast<std::size_t>(j));
    return std::find(w.entry.begin(), w.entry.end(), 1) != w.entry.end() &&
           std::find(w.exit.begin(), w.exit.end(), 1) != w.exit.end();
  }

 private:
  static std::vector<TimeStep> list(const std::vector<char>& mask) {
    std::vector<TimeStep> out;
    for (std::size_t t = 0; t < mask.size(); ++t)
      if (mask[t]) out.push_back(static_cast<TimeStep>(t));
    return out;
  }
};

using Interval = std::pair<TimeStep, TimeStep>;

/// Entries are interval starts not strictly inside another interval; exits
/// are interval ends not strictly inside another. Overlapping intervals thus
/// collapse to one entry/exit pair, while touching ones stay separate.
inline SpotWindow window_from_intervals(const std::vector<Interval>& intervals, TimeStep horizon) {
  SpotWindow w{std::vector<char>(static_cast<std::size_t>(horizon), 0),
               std::vector<char>(static_cast<std::size_t>(horizon), 0)};
  for (auto [s, e] : intervals) {
    bool inner_start = false, inner_end = false;
    for (auto [a, b] : intervals) {
      inner_start = inner_start || (a < s && s <= b);
      inner_end = inner_end || (a <= e && e < b);
    }
    if (!inner_start && s >= 0 && s < horizon) w.entry[static_cast<std::size_t>(s)] = 1;
    if (!inner_end && e >= 0 && e < horizon) w.exit[static_cast<std::size_t>(e)] = 1;
  }
  return w;
}

/// No restriction at spots covering some job; spots covering nothing are closed.
inline TimeWindows unrestricted_windows(const Instance& inst) {
  TimeWindows tw;
  const auto h = static_cast<std::size_t>(inst.horizon);
  for (int j = 0; j < inst.num_spots(); ++j) {
    const char v = inst.covered_jobs(j).empty() ? 0 : 1;
    tw.spots.push_back({std::vector<char>(h, v), std::vector<char>(h, v)});
  }
  return tw;
}

inline TimeWindows input_based_windows(const Instance& inst) {
  TimeWindows tw;
  for (int j = 0; j < inst.num_spots(); ++j) {
    std::vector<Interval> iv;
    for (JobId i : inst.covered_jobs(j)) iv.emplace_back(inst.job(i).window_start, inst.job(i).window_end);
    tw.spots.push_back(window_from_intervals(iv, inst.horizon));
  }
  return tw;
}

/// Same construction over the work intervals of mission paths carrying
/// positive weight.
inline TimeWindows primal_windows(const Instance& inst, const std::vector<MissionPath>& missions,
                                  const std::vector<double>& weights, double min_weight = 1e-9) {
  std::vector<std::vector<Interval>> per_spot(static_cast<std::size_t>(inst.num_spots()));
  for (std::size_t q = 0; q < missions.size() && q < weights.size(); ++q) {
    if (weights[q] <= min_weight) continue;
    for (const Visit& v : missions[q].visits)
      for (SpotId j : inst.coverage(v.job)) per_spot[static_cast<std::size_t>(j)].emplace_back(v.work_start, v.work_end);
  }
  TimeWindows tw;
  for (const auto& iv : per_spot) tw.spots.push_back(window_from_intervals(iv, inst.horizon));
  return tw;
}

/// Summed linking price collected by standing at spot j during period t.
inline std::vector<std::vector<double>> spot_rewards(const Instance& inst, const DualPrices& duals) {
  std::vector<std::vector<double>> r(static_cast<std::size_t>(inst.num_spots()),
                                     std::vector<double>(static_cast<std::size_t>(inst.horizon), 0.0));
  for (int j = 0; j < inst.num_spots(); ++j)
    for (JobId i : inst.covered_jobs(j))
      for (TimeStep t = 0; t < inst.horizon; ++t) r[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] += duals.link(i, t);
  return r;
}

/// Stays start and end only at periods with positive reward.
inline TimeWindows dual_windows(const Instance& inst, const DualPrices& duals, double tol = 1e-12) {
  const auto r = spot_rewards(inst, duals);
  TimeWindows tw;
  for (int j = 0; j < inst.num_spots(); ++j) {
    SpotWindow w;
    for (double v : r[static_cast<std::size_t>(j)]) w.entry.push_back(v > tol ? 1 : 0);
    w.exit = w.entry;
    tw.spots.push_back(std::move(w));
  }
  return tw;
}

/// Tightens every entry forward to the next positive-reward period and
/// every exit back to the previous one. On an interval this keeps exactly
/// the smallest sub-interval with the same positive-reward periods.
inline TimeWindows trim_to_duals(const TimeWindows& base, const Instance& inst, const DualPrices& duals,
                                 double tol = 1e-12) {
  const auto r = spot_rewards(inst, duals);
  const int h = inst.horizon;
  TimeWindows tw;
  for (int j = 0; j < inst.num_spots(); ++j) {
    const auto& rew = r[static_cast<std::size_t>(j)];
    const auto& bw = base.spots[static_cast<std::size_t>(j)];
    SpotWindow w{std::vector<char>(static_cast<std::size_t>(h), 0), std::vector<char>(static_cast<std::size_t>(h), 0)};
    for (TimeStep t = 0; t < h; ++t) {
      if (bw.entry[static_cast<std::size_t>(t)]) {
        TimeStep u = t;
        while (u < h && !(rew[static_cast<std::size_t>(u)] > tol)) ++u;
        if (u < h) w.entry[static_cast<std::size_t>(u)] = 1;
      }
      if (bw.exit[static_cast<std::size_t>(t)]) {
        TimeStep u = t;
        while (u >= 0 && !(rew[static_cast<std::size_t>(u)] > tol)) --u;
        if (u >= 0) w.exit[static_cast<std::size_t>(u)] = 1;
      }
    }
    tw.spots.push_back(std::move(w));
  }
  return tw;
}

}  // namespace dcg
