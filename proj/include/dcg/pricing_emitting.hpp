#pragma once

// Emitter pricing: shortest path over (spot, period) states where stays
// collect linking prices of every covered job.

#include "windows.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

namespace dcg {

struct EmitterPricingOptions {
  int cap = 0;  ///< max paths returned; 0 keeps every negative path
  double epsilon = 1e-6;
  /// Optional forced first spots (in order) and the spots allowed after them.
  std::vector<SpotId> prefix;
  std::optional<std::vector<SpotId>> continuation;
};

struct PricedEmitter {
  EmittingPath path;
  double reduced_cost = 0.0;
};

struct EmitterPricingResult {
  std::vector<PricedEmitter> columns;  ///< negative paths, most negative first
  double best_reduced_cost = 0.0;      ///< min over completed paths, 0 if none
  long states = 0;
};

/// Dynamic program over states (phase, spot, period, mode). Mode "idle"
/// means present at the spot without a stay in progress; mode "stay" means
/// the period is covered. A stay may only start at an entry period and end
/// at an exit period of `windows`. The phase counts stays while a prefix is
/// being enforced.
inline EmitterPricingResult price_emitting(const Instance& inst, const DualPrices& duals, const TimeWindows& windows,
                                           const EmitterPricingOptions& opt = {}) {
  constexpr double kInfCost = std::numeric_limits<double>::infinity();
  const int m = inst.num_spots();
  const int h = inst.horizon;
  const int phases = static_cast<int>(opt.prefix.size()) + 1;
  const auto reward = spot_rewards(inst, duals);

  std::vector<char> cont_ok(static_cast<std::size_t>(m), 1);
  if (opt.continuation) {
    std::fill(cont_ok.begin(), cont_ok.end(), 0);
    for (SpotId j : *opt.continuation) cont_ok[static_cast<std::size_t>(j)] = 1;
  }
  auto may_stay = [&](int phase, SpotId j) {
    if (phase < phases - 1) return opt.prefix[static_cast<std::size_t>(phase)] == j;
    return cont_ok[static_cast<std::size_t>(j)] != 0;
  };

  // Parent encoding: -1 start from depot; otherwise index of the previous state.
  auto idx = [&](int phase, int j, int t, int mode) {
    return ((static_cast<std::size_t>(phase) * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)) *
                static_cast<std::size_t>(h) + static_cast<std::size_t>(t)) * 2 + static_cast<std::size_t>(mode);
  };
  const std::size_t total = static_cast<std::size_t>(phases) * static_cast<std::size_t>(m) * static_cast<std::size_t>(h) * 2;
  std::vector<double> value(total, kInfCost);
  std::vector<long> parent(total, -1);

  auto relax = [&](std::size_t s, double v, long from) {
    if (v < value[s] - 1e-12) {
      value[s] = v;
      parent[s] = from;
    }
  };

  for (int j = 0; j < m; ++j) {
    if (!windows.usable(j)) continue;
    const TimeStep t0 = inst.depot_spot_travel(j);
    if (t0 < h) relax(idx(0, j, t0, 0), duals.beta + inst.depot_spot_distance(j), -1);
  }

  struct End {
    double rc;
    std::size_t state;
  };
  std::vector<End> ends;
  EmitterPricingResult res;
  res.best_reduced_cost = kInfCost;

  for (int t = 0; t < h; ++t)
    for (int ph = 0; ph < phases; ++ph)
      for (int j = 0; j < m; ++j) {
        const auto& w = windows.spots[static_cast<std::size_t>(j)];
        const std::size_t idle = idx(ph, j, t, 0);
        if (value[idle] < kInfCost) {
          ++res.states;
          if (t + 1 < h) relax(idx(ph, j, t + 1, 0), value[idle], static_cast<long>(idle));
          if (w.entry[static_cast<std::size_t>(t)] && may_stay(ph, j))
            relax(idx(ph, j, t, 1), value[idle] - reward[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)],
                  static_cast<long>(idle));
        }
        const std::size_t stay = idx(ph, j, t, 1);
        if (value[stay] == kInfCost) continue;
        ++res.states;
        if (t + 1 < h)
          relax(idx(ph, j, t + 1, 1), value[stay] - reward[static_cast<std::size_t>(j)][static_cast<std::size_t>(t + 1)],
                static_cast<long>(stay));
        if (!w.exit[static_cast<std::size_t>(t)]) continue;
        const int next_phase = std::min(ph + 1, phases - 1);
        if (next_phase == phases - 1) {
          if (t + 1 + inst.depot_spot_travel(j) <= h) {
            const double rc = value[stay] + inst.depot_spot_distance(j);
            res.best_reduced_cost = std::min(res.best_reduced_cost, rc);
            if (rc < -opt.epsilon) ends.push_back({rc, stay});
          }
        }
        for (int k = 0; k < m; ++k) {
          if (!windows.usable(k)) continue;
          const int arrive = t + 1 + inst.spot_travel(j, k);
          if (arrive >= h) continue;
          relax(idx(next_phase, k, arrive, 0), value[stay] + inst.spot_distance(j, k), static_cast<long>(stay));
        }
      }
  if (res.best_reduced_cost == kInfCost) res.best_reduced_cost = 0.0;

  auto decode = [&](std::size_t s, int& j, int& t, int& mode) {
    mode = static_cast<int>(s % 2);
    s /= 2;
    t = static_cast<int>(s % static_cast<std::size_t>(h));
    s /= static_cast<std::size_t>(h);
    j = static_cast<int>(s % static_cast<std::size_t>(m));
  };
  auto rebuild = [&](std::size_t end) {
    std::vector<Stay> stays;
    long s = static_cast<long>(end);
    int stay_end = -1;
    while (s >= 0) {
      int j, t, mode;
      decode(static_cast<std::size_t>(s), j, t, mode);
      const long p = parent[static_cast<std::size_t>(s)];
      if (mode == 1) {
        if (stay_end < 0) stay_end = t;
        int pj = -1, pt = -1, pmode = -1;
        if (p >= 0) decode(static_cast<std::size_t>(p), pj, pt, pmode);
        if (p < 0 || pmode == 0) {
          stays.push_back({j, t, stay_end});
          stay_end = -1;
        }
      }
      s = p;
    }
    std::reverse(stays.begin(), stays.end());
    return make_emitting_path(inst, std::move(stays));
  };

  std::stable_sort(ends.begin(), ends.end(), [](const End& a, const End& b) { return a.rc < b.rc; });
  for (const End& e : ends) {
    if (opt.cap > 0 && static_cast<int>(res.columns.size()) >= opt.cap) break;
    res.columns.push_back({rebuild(e.state), e.rc});
  }
  return res;
}

}  // namespace dcg
